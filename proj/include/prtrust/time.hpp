#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace prtrust {

/// A UTC instant with second precision, stored as Unix seconds.
struct Timestamp {
  std::int64_t seconds = 0;

  constexpr auto operator<=>(const Timestamp&) const = default;

  static constexpr Timestamp from_unix(std::int64_t s) { return Timestamp{s}; }
};

constexpr std::int64_t operator-(Timestamp a, Timestamp b) { return a.seconds - b.seconds; }
constexpr Timestamp operator+(Timestamp t, std::int64_t delta) { return Timestamp{t.seconds + delta}; }

inline constexpr std::int64_t kSecondsPerDay = 86400;

/// Parses ISO-8601 "YYYY-MM-DDTHH:MM:SS" followed by "Z" or a "+HH:MM" /
/// "-HH:MM" offset. Fractional seconds are truncated. Throws ParseError.
Timestamp parse_timestamp(std::string_view text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_timestamp(Timestamp t);

/// Current wall-clock time, truncated to seconds.
Timestamp now_utc();

}  // namespace prtrust
