#pragma once

// Strict readers over nlohmann::json used by every file parser. Errors carry the JSON
// path of the offending field.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "egg/error.hpp"
#include "egg/graph.hpp"

namespace egg::detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

json parse_json(std::string_view text, const std::string& where);

class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path);

  const json& required(std::string_view key);
  const json* optional(std::string_view key);

  std::string string(std::string_view key, bool allow_empty = false);
  std::optional<std::string> optional_string(std::string_view key);
  std::int64_t integer(std::string_view key);
  NodeId id(std::string_view key);
  Position3 position(std::string_view key);
  TimeInterval interval(std::string_view key);

  std::string path(std::string_view key) const { return path_ + "." + std::string(key); }

  // Throws if the object carries keys that were never read.
  void finish() const;

 private:
  const json& j_;
  std::string path_;
  std::set<std::string, std::less<>> seen_;
};

[[noreturn]] void schema_error(const std::string& path, const std::string& what);

const json& expect_array(const json& j, const std::string& path);
Position3 read_position(const json& j, const std::string& path);
NodeId read_id(const json& j, const std::string& path);

ordered_json write_position(const Position3& p);

}  // namespace egg::detail
