#include "prtrust/time.hpp"

#include <chrono>
#include <cstdio>

#include "prtrust/errors.hpp"

namespace prtrust {

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date.
constexpr std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct Civil {
  std::int64_t year;
  unsigned month;
  unsigned day;
};

constexpr Civil civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return {y + (m <= 2), m, d};
}

constexpr bool is_leap(std::int64_t y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

constexpr unsigned days_in_month(std::int64_t y, unsigned m) {
  constexpr unsigned table[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : table[m - 1];
}

static_assert(days_from_civil(1970, 1, 1) == 0);
static_assert(days_from_civil(2022, 1, 1) == 18993);

[[noreturn]] void bad(std::string_view text, const char* why) {
  throw ParseError("invalid timestamp '" + std::string(text) + "': " + why);
}

unsigned digits(std::string_view text, std::size_t pos, std::size_t count) {
  if (pos + count > text.size()) bad(text, "truncated");
  unsigned v = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') bad(text, "expected digit");
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

void expect(std::string_view text, std::size_t pos, char c) {
  if (pos >= text.size() || text[pos] != c) bad(text, "unexpected character");
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SS
  const unsigned year = digits(text, 0, 4);
  expect(text, 4, '-');
  const unsigned month = digits(text, 5, 2);
  expect(text, 7, '-');
  const unsigned day = digits(text, 8, 2);
  if (text.size() <= 10 || (text[10] != 'T' && text[10] != 't')) bad(text, "missing 'T'");
  const unsigned hour = digits(text, 11, 2);
  expect(text, 13, ':');
  const unsigned minute = digits(text, 14, 2);
  expect(text, 16, ':');
  const unsigned second = digits(text, 17, 2);

  if (month < 1 || month > 12) bad(text, "month out of range");
  if (day < 1 || day > days_in_month(year, month)) bad(text, "day out of range");
  if (hour > 23 || minute > 59 || second > 60) bad(text, "time out of range");

  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) bad(text, "empty fraction");
  }

  std::int64_t offset = 0;
  if (pos >= text.size()) bad(text, "missing zone designator");
  if (text[pos] == 'Z' || text[pos] == 'z') {
    ++pos;
  } else if (text[pos] == '+' || text[pos] == '-') {
    const int sign = text[pos] == '+' ? 1 : -1;
    const unsigned oh = digits(text, pos + 1, 2);
    expect(text, pos + 3, ':');
    const unsigned om = digits(text, pos + 4, 2);
    if (oh > 23 || om > 59) bad(text, "offset out of range");
    offset = sign * static_cast<std::int64_t>(oh * 3600 + om * 60);
    pos += 6;
  } else {
    bad(text, "missing zone designator");
  }
  if (pos != text.size()) bad(text, "trailing characters");

  const std::int64_t days = days_from_civil(year, month, day);
  return Timestamp{days * kSecondsPerDay + hour * 3600 + minute * 60 + second - offset};
}

std::string format_timestamp(Timestamp t) {
  std::int64_t days = t.seconds / kSecondsPerDay;
  std::int64_t rem = t.seconds % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    --days;
  }
  const Civil c = civil_from_days(days);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                static_cast<long long>(c.year), c.month, c.day,
                static_cast<long long>(rem / 3600), static_cast<long long>(rem / 60 % 60),
                static_cast<long long>(rem % 60));
  return buf;
}

Timestamp now_utc() {
  const auto now = std::chrono::system_clock::now();
  return Timestamp{std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count()};
}

}  // namespace prtrust
