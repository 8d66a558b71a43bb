// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include <catch_amalgamated.hpp>

#include <sstream>

#include "bugdestiny/csv.hpp"
#include "bugdestiny/timestamp.hpp"

using namespace bugdestiny;
using namespace std::chrono;

namespace {

sys_seconds utc(int y, unsigned mo, unsigned d, int h = 0, int mi = 0, int s = 0) {
  return sys_days(year(y) / month(mo) / day(d)) + hours(h) + minutes(mi) + seconds(s);
}

std::vector<std::vector<std::string>> read_all(const std::string& text, char delim = ',') {
  std::istringstream in(text);
  csv::Reader r(in, delim);
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> f;
  while (r.next(f)) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("ISO-8601 variants") {
  CHECK(parse_iso8601("2001-10-10 22:36:00 -0400") == utc(2001, 10, 11, 2, 36));
  CHECK(parse_iso8601("2001-01-01T00:00Z") == utc(2001, 1, 1));
  CHECK(parse_iso8601("2001-01-02T06:00:00+00:00") == utc(2001, 1, 2, 6));
  CHECK(parse_iso8601("2001-01-02 06:00:00.75 UTC") == utc(2001, 1, 2, 6));
  CHECK(parse_iso8601("2004-02-29") == utc(2004, 2, 29));
  CHECK(parse_iso8601("2001-01-01T05:30+0530") == utc(2001, 1, 1));
  CHECK(parse_iso8601("2001-01-01T00:00:00-04") == utc(2001, 1, 1, 4));
  CHECK_FALSE(parse_iso8601("2003-02-29").has_value());
  CHECK_FALSE(parse_iso8601("not a date").has_value());
  CHECK_FALSE(parse_iso8601("2001-13-01").has_value());
  CHECK_FALSE(parse_iso8601("2001-01-01 25:00").has_value());
  CHECK_FALSE(parse_iso8601("").has_value());
}

TEST_CASE("epoch seconds and formatting") {
  CHECK(parse_epoch_seconds("0") == sys_seconds{});
  CHECK(parse_epoch_seconds("1000000000") == utc(2001, 9, 9, 1, 46, 40));
  CHECK_FALSE(parse_epoch_seconds("12a").has_value());
  CHECK(parse_timestamp("86400", TimestampFormat::EpochSeconds) == utc(1970, 1, 2));
  CHECK(format_iso8601(utc(2001, 10, 11, 2, 36)) == "2001-10-11T02:36:00Z");
  CHECK(hours_between(utc(2001, 1, 1), utc(2001, 1, 2, 6)) == 30.0);
}

TEST_CASE("CSV quoting") {
  const auto rows = read_all("a,b,c\n\"x, y\",\"say \"\"hi\"\"\",\"multi\nline\"\r\n1,,3\n");
  REQUIRE(rows.size() == 3);
  CHECK(rows[1] == std::vector<std::string>{"x, y", "say \"hi\"", "multi\nline"});
  CHECK(rows[2] == std::vector<std::string>{"1", "", "3"});
  CHECK(read_all("a;b\n1;2", ';')[1] == std::vector<std::string>{"1", "2"});
  CHECK(csv::escape("plain") == "plain");
  CHECK(csv::escape("a,b") == "\"a,b\"");
  CHECK(csv::escape("q\"") == "\"q\"\"\"");
  const std::string round = csv::escape("x\ny, \"z\"");
  CHECK(read_all(round)[0][0] == "x\ny, \"z\"");
}
