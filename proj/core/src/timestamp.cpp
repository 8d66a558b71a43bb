// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The bugdestiny Authors

#include "bugdestiny/timestamp.hpp"

#include <charconv>
#include <cstdio>

namespace bugdestiny {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Reads exactly `width` digits.
bool digits(std::string_view& s, int width, int& out) {
  if (s.size() < static_cast<std::size_t>(width)) return false;
  int v = 0;
  for (int i = 0; i < width; ++i) {
    const char c = s[i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  s.remove_prefix(width);
  return true;
}

bool expect(std::string_view& s, char c) {
  if (s.empty() || s.front() != c) return false;
  s.remove_prefix(1);
  return true;
}

// Parses the zone suffix into an offset east of UTC, in seconds.
bool zone_offset(std::string_view s, long& offset) {
  s = trim(s);
  if (s.empty() || s == "Z" || s == "z" || s == "UTC" || s == "GMT") {
    offset = 0;
    return true;
  }
  int sign = 0;
  if (s.front() == '+') sign = 1;
  if (s.front() == '-') sign = -1;
  if (sign == 0) return false;
  s.remove_prefix(1);
  int hh = 0;
  int mm = 0;
  if (!digits(s, 2, hh)) return false;
  if (!s.empty()) {
    if (s.front() == ':') s.remove_prefix(1);
    if (!digits(s, 2, mm)) return false;
  }
  if (!s.empty() || hh > 23 || mm > 59) return false;
  offset = sign * (hh * 3600L + mm * 60L);
  return true;
}

}  // namespace

std::optional<Timestamp> parse_iso8601(std::string_view text) {
  using namespace std::chrono;
  std::string_view s = trim(text);
  int y = 0, mo = 0, d = 0, hh = 0, mi = 0, ss = 0;
  if (!digits(s, 4, y) || !expect(s, '-') || !digits(s, 2, mo) || !expect(s, '-') || !digits(s, 2, d)) {
    return std::nullopt;
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  long offset = 0;
  if (!s.empty()) {
    if (s.front() != 'T' && s.front() != 't' && s.front() != ' ') return std::nullopt;
    s.remove_prefix(1);
    if (!digits(s, 2, hh) || !expect(s, ':') || !digits(s, 2, mi)) return std::nullopt;
    if (!s.empty() && s.front() == ':') {
      s.remove_prefix(1);
      if (!digits(s, 2, ss)) return std::nullopt;
      if (!s.empty() && (s.front() == '.' || s.front() == ',')) {
        s.remove_prefix(1);
        std::size_t n = 0;
        while (n < s.size() && s[n] >= '0' && s[n] <= '9') ++n;
        if (n == 0) return std::nullopt;
        s.remove_prefix(n);
      }
    }
    if (hh > 23 || mi > 59 || ss > 60) return std::nullopt;
    if (!zone_offset(s, offset)) return std::nullopt;
  }
  const auto local = sys_days{ymd} + hours{hh} + minutes{mi} + seconds{ss};
  return time_point_cast<seconds>(local) - seconds{offset};
}

std::optional<Timestamp> parse_epoch_seconds(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) return std::nullopt;
  const auto dot = s.find('.');
  const std::string_view whole = s.substr(0, dot);
  if (dot != std::string_view::npos) {
    const auto frac = s.substr(dot + 1);
    for (char c : frac) {
      if (c < '0' || c > '9') return std::nullopt;
    }
  }
  long long v = 0;
  const auto* end = whole.data() + whole.size();
  const auto [ptr, ec] = std::from_chars(whole.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return Timestamp{std::chrono::seconds{v}};
}

std::optional<Timestamp> parse_timestamp(std::string_view text, TimestampFormat format) {
  return format == TimestampFormat::Iso8601 ? parse_iso8601(text) : parse_epoch_seconds(text);
}

std::string format_iso8601(Timestamp t) {
  using namespace std::chrono;
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{t - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

}  // namespace bugdestiny
