#include <doctest.h>

#include <stdexcept>

#include "windcast/calendar.hpp"

using namespace windcast;

TEST_SUITE("calendar") {

TEST_CASE("known epochs") {
  CHECK(parse_iso8601("1970-01-01T00:00:00Z") == 0);
  CHECK(parse_iso8601("2007-08-01T00:00:00Z") == 1185926400);
  CHECK(parse_iso8601("2016-02-29T12:30:45Z") == 1456749045);  // leap day
  CHECK(parse_iso8601("1999-12-31T23:59:59Z") == 946684799);
  CHECK(parse_iso8601("2020-01-01T00:00:00Z") == 1577836800);
}

TEST_CASE("accepted spellings") {
  const utc_seconds t = 1456749045;
  CHECK(parse_iso8601("2016-02-29T12:30:45") == t);
  CHECK(parse_iso8601("2016-02-29 12:30:45") == t);
  CHECK(parse_iso8601("2016-02-29") == 1456704000);  // midnight
}

TEST_CASE("rejects malformed text") {
  CHECK_THROWS_AS(parse_iso8601(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_iso8601("not a date"), std::invalid_argument);
  CHECK_THROWS_AS(parse_iso8601("2016-13-01T00:00:00"), std::invalid_argument);
  CHECK_THROWS_AS(parse_iso8601("2016-02-30T00:00:00"), std::invalid_argument);
  CHECK_THROWS_AS(parse_iso8601("2015-02-29T00:00:00"), std::invalid_argument);
  CHECK_THROWS_AS(parse_iso8601("2016-01-01T24:00:00"), std::invalid_argument);
  CHECK_THROWS_AS(parse_iso8601("2016-01-01T00:61:00"), std::invalid_argument);
}

TEST_CASE("format round trip") {
  for (utc_seconds t : {utc_seconds(0), utc_seconds(1185926400),
                        utc_seconds(1456749045), utc_seconds(946684799),
                        utc_seconds(-86400), utc_seconds(4102444799)}) {
    CHECK(parse_iso8601(format_iso8601(t)) == t);
  }
  CHECK(format_iso8601(1185926400) == "2007-08-01T00:00:00Z");
}

TEST_CASE("civil round trip across a century") {
  // every 97 days plus an odd second offset, 1970 through 2069
  for (utc_seconds t = 0; t < 3155760000LL; t += 97 * 86400 + 8641) {
    const CivilTime c = civil_from_utc(t);
    CHECK(utc_from_civil(c) == t);
    CHECK(c.month >= 1);
    CHECK(c.month <= 12);
    CHECK(c.day >= 1);
    CHECK(c.day <= 31);
  }
}

TEST_CASE("civil fields of a known instant") {
  const CivilTime c = civil_from_utc(1456749045);
  CHECK(c.year == 2016);
  CHECK(c.month == 2);
  CHECK(c.day == 29);
  CHECK(c.hour == 12);
  CHECK(c.minute == 30);
  CHECK(c.second == 45);
  CHECK(month_of(1456749045) == 2);
  CHECK(month_of(1185926400) == 8);
}

}
