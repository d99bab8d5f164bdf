#include "windcast/calendar.hpp"

#include <cctype>
#include <stdexcept>

namespace windcast {

namespace {

// Civil-calendar <-> day-count conversions on the proleptic Gregorian
// calendar. Era-based formulation, valid far beyond any sensor archive.
std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);             // [0, 399]
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;  // [0, 365]
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;            // [0, 146096]
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yr + (m <= 2));
}

int parse_fixed_digits(const std::string& s, size_t pos, int count) {
  int v = 0;
  for (int i = 0; i < count; ++i) {
    const char c = pos + i < s.size() ? s[pos + i] : '\0';
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("bad timestamp: " + s);
    v = v * 10 + (c - '0');
  }
  return v;
}

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

int days_in_month(int y, int m) {
  static const int base[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : base[m - 1];
}

} // namespace

utc_seconds utc_from_civil(const CivilTime& c) {
  return days_from_civil(c.year, c.month, c.day) * 86400
       + c.hour * 3600 + c.minute * 60 + c.second;
}

CivilTime civil_from_utc(utc_seconds t) {
  std::int64_t days = t / 86400;
  std::int64_t sod = t % 86400;
  if (sod < 0) { sod += 86400; --days; }
  CivilTime c{};
  civil_from_days(days, c.year, c.month, c.day);
  c.hour = static_cast<int>(sod / 3600);
  c.minute = static_cast<int>(sod % 3600 / 60);
  c.second = static_cast<int>(sod % 60);
  return c;
}

int month_of(utc_seconds t) { return civil_from_utc(t).month; }

utc_seconds parse_iso8601(const std::string& text) {
  CivilTime c{};
  c.year = parse_fixed_digits(text, 0, 4);
  if (text.size() < 10 || text[4] != '-' || text[7] != '-')
    throw std::invalid_argument("bad timestamp: " + text);
  c.month = parse_fixed_digits(text, 5, 2);
  c.day = parse_fixed_digits(text, 8, 2);
  size_t rest = 10;
  if (rest < text.size()) {
    if (text[rest] != 'T' && text[rest] != ' ')
      throw std::invalid_argument("bad timestamp: " + text);
    ++rest;
    c.hour = parse_fixed_digits(text, rest, 2);
    c.minute = parse_fixed_digits(text, rest + 3, 2);
    c.second = parse_fixed_digits(text, rest + 6, 2);
    if (text[rest + 2] != ':' || text[rest + 5] != ':')
      throw std::invalid_argument("bad timestamp: " + text);
    rest += 8;
    if (rest < text.size() && text[rest] == 'Z') ++rest;
  }
  if (rest != text.size())
    throw std::invalid_argument("bad timestamp: " + text);
  if (c.month < 1 || c.month > 12 || c.day < 1 || c.day > days_in_month(c.year, c.month)
      || c.hour > 23 || c.minute > 59 || c.second > 59)
    throw std::invalid_argument("bad timestamp: " + text);
  return utc_from_civil(c);
}

std::string format_iso8601(utc_seconds t) {
  const CivilTime c = civil_from_utc(t);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ",
                c.year, c.month, c.day, c.hour, c.minute, c.second);
  return buf;
}

} // namespace windcast
