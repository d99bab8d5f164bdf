#pragma once

#include <cstdint>
#include <string>

namespace windcast {

// Seconds since 1970-01-01T00:00:00Z, leap seconds ignored (POSIX time).
using utc_seconds = std::int64_t;

struct CivilTime {
  int year;
  int month;  // 1..12
  int day;    // 1..31
  int hour;
  int minute;
  int second;
};

// Accepts "YYYY-MM-DDTHH:MM:SS", "YYYY-MM-DD HH:MM:SS", optional trailing 'Z',
// and a bare "YYYY-MM-DD" (midnight). Throws std::invalid_argument otherwise.
utc_seconds parse_iso8601(const std::string& text);

std::string format_iso8601(utc_seconds t);

CivilTime civil_from_utc(utc_seconds t);
utc_seconds utc_from_civil(const CivilTime& c);

// Calendar month 1..12 of the instant.
int month_of(utc_seconds t);

} // namespace windcast
