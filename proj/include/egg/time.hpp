#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace egg {

/// Instant in integer microseconds since the Unix epoch.
struct Timestamp {
  std::int64_t micros = 0;

  auto operator<=>(const Timestamp&) const = default;
};

/// Closed interval [start, end]. Containment and overlap are exact on the integer bounds.
struct TimeInterval {
  Timestamp start;
  Timestamp end;

  bool valid() const { return start.micros >= 0 && start <= end; }
  bool contains(Timestamp t) const { return start <= t && t <= end; }
  bool contains(const TimeInterval& other) const {
    return start <= other.start && other.end <= end;
  }
  // Shares at least one instant.
  bool overlaps(const TimeInterval& other) const {
    return start <= other.end && other.start <= end;
  }
  // Shares more than a single boundary instant.
  bool overlaps_interior(const TimeInterval& other) const {
    return start < other.end && other.start < end;
  }

  auto operator<=>(const TimeInterval&) const = default;
};

/// Smallest interval covering both arguments.
TimeInterval hull(const TimeInterval& a, const TimeInterval& b);

/// "YYYY-MM-DDTHH:MM:SS.ffffffZ" (UTC, always six fractional digits).
std::string to_iso8601(Timestamp t);

}  // namespace egg
