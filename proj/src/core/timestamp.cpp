/*
 * Copyright 2026 The CyberSentinel Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "sentinel/core/timestamp.hpp"

#include <array>
#include <cstdio>

#include "sentinel/core/errors.hpp"

namespace sentinel {
namespace {

using namespace std::chrono;

constexpr std::array<std::string_view, 12> kMonths = {
    "Jan", "Feb", "Mar", "Apr", "May", "Jun",
    "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Reads exactly `width` digits.
bool read_fixed(std::string_view s, std::size_t pos, std::size_t width,
                int& out) {
  if (pos + width > s.size()) return false;
  int v = 0;
  for (std::size_t i = 0; i < width; ++i) {
    const char c = s[pos + i];
    if (!is_digit(c)) return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

bool valid_clock(int h, int m, int s) {
  return h >= 0 && h < 24 && m >= 0 && m < 60 && s >= 0 && s < 61;
}

bool make_civil(int year, int month, int day, int h, int m, int s,
                Timestamp& out) {
  const year_month_day ymd{std::chrono::year{year},
                           std::chrono::month{static_cast<unsigned>(month)},
                           std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok() || !valid_clock(h, m, s)) return false;
  out = Timestamp::FromCivil(year, month, day, h, m, s);
  return true;
}

}  // namespace

Timestamp Timestamp::FromCivil(int year, unsigned month, unsigned day,
                               int hour, int minute, int second) {
  const sys_days days{std::chrono::year{year} / std::chrono::month{month} /
                      std::chrono::day{day}};
  return Timestamp(days.time_since_epoch().count() * 86400LL + hour * 3600LL +
                   minute * 60LL + second);
}

Timestamp Timestamp::Now() {
  return Timestamp(
      duration_cast<seconds>(system_clock::now().time_since_epoch()).count());
}

std::string format_iso8601(Timestamp ts) {
  const sys_seconds tp{seconds{ts.epoch_seconds()}};
  const auto day = floor<days>(tp);
  const year_month_day ymd{day};
  const hh_mm_ss hms{tp - day};
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()),
                static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

std::string format_compact(Timestamp ts) {
  std::string iso = format_iso8601(ts);
  std::string out;
  out.reserve(iso.size());
  for (char c : iso) {
    if (c != '-' && c != ':') out.push_back(c);
  }
  return out;
}

Timestamp parse_iso8601(std::string_view text) {
  // YYYY-MM-DDTHH:MM:SSZ
  int y, mo, d, h, mi, s;
  if (text.size() == 20 && read_fixed(text, 0, 4, y) && text[4] == '-' &&
      read_fixed(text, 5, 2, mo) && text[7] == '-' &&
      read_fixed(text, 8, 2, d) && (text[10] == 'T' || text[10] == 't') &&
      read_fixed(text, 11, 2, h) && text[13] == ':' &&
      read_fixed(text, 14, 2, mi) && text[16] == ':' &&
      read_fixed(text, 17, 2, s) && (text[19] == 'Z' || text[19] == 'z')) {
    Timestamp out;
    if (make_civil(y, mo, d, h, mi, s, out)) return out;
  }
  throw ParseError("unparseable timestamp: \"" + std::string(text) + "\"");
}

bool try_parse_syslog_time(std::string_view text, int year, Timestamp& out) {
  // "Mon DD HH:MM:SS" with DD possibly " D".
  if (text.size() < 15 || text[3] != ' ') return false;
  int month = 0;
  for (std::size_t i = 0; i < kMonths.size(); ++i) {
    if (text.substr(0, 3) == kMonths[i]) {
      month = static_cast<int>(i) + 1;
      break;
    }
  }
  if (month == 0) return false;
  int day = 0;
  if (text[4] == ' ') {
    if (!read_fixed(text, 5, 1, day)) return false;
  } else if (!read_fixed(text, 4, 2, day)) {
    return false;
  }
  int h, m, s;
  if (text[6] != ' ' || !read_fixed(text, 7, 2, h) || text[9] != ':' ||
      !read_fixed(text, 10, 2, m) || text[12] != ':' ||
      !read_fixed(text, 13, 2, s)) {
    return false;
  }
  return make_civil(year, month, day, h, m, s, out);
}

Timestamp parse_timestamp(std::string_view text, int year) {
  if (!text.empty() && is_digit(text.front())) return parse_iso8601(text);
  Timestamp out;
  if (text.size() == 15 && try_parse_syslog_time(text, year, out)) return out;
  throw ParseError("unparseable timestamp: \"" + std::string(text) + "\"");
}

int hour_of(Timestamp ts) {
  const std::int64_t secs = ts.epoch_seconds();
  std::int64_t in_day = secs % 86400;
  if (in_day < 0) in_day += 86400;
  return static_cast<int>(in_day / 3600);
}

int current_year() {
  const sys_days today = floor<days>(system_clock::now());
  return static_cast<int>(year_month_day{today}.year());
}

}  // namespace sentinel
