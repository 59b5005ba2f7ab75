#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace egg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;    // validation violations, eval below threshold, bad input files
inline constexpr int kExitUsage = 2;      // bad flags, missing files, unknown ids
inline constexpr int kExitTransport = 3;  // chat service or agent failure

/// Runs one `egg` invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace egg::cli
