#include "egg/time.hpp"

#include <algorithm>
#include <chrono>

#include <fmt/format.h>

namespace egg {

TimeInterval hull(const TimeInterval& a, const TimeInterval& b) {
  return {std::min(a.start, b.start), std::max(a.end, b.end)};
}

std::string to_iso8601(Timestamp t) {
  using namespace std::chrono;
  const sys_time<microseconds> tp{microseconds{t.micros}};
  const auto day = floor<days>(tp);
  const year_month_day ymd{day};
  const hh_mm_ss<microseconds> tod{tp - day};
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}.{:06d}Z", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                     tod.hours().count(), tod.minutes().count(), tod.seconds().count(),
                     tod.subseconds().count());
}

}  // namespace egg
