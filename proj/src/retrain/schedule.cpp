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

#include "sentinel/retrain/schedule.hpp"

#include <chrono>
#include <sstream>
#include <vector>

#include "sentinel/core/errors.hpp"

namespace sentinel::retrain {
namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

int to_int(const std::string& s, std::string_view field) {
  if (s.empty() || s.size() > 4 ||
      s.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError("invalid cron " + std::string(field) + " value \"" + s +
                      "\"");
  }
  return std::stoi(s);
}

// Sets bits [lo, hi] of `out` (offset by `base`) selected by `text`.
template <std::size_t N>
void parse_field(const std::string& text, int lo, int hi, std::string_view name,
                 std::bitset<N>& out) {
  if (text.empty()) throw ConfigError("empty cron " + std::string(name));
  for (const std::string& item : split(text, ',')) {
    std::string range = item;
    int step = 1;
    if (const auto slash = item.find('/'); slash != std::string::npos) {
      range = item.substr(0, slash);
      step = to_int(item.substr(slash + 1), name);
      if (step < 1) throw ConfigError("cron step must be >= 1 in " + item);
    }
    int a = lo;
    int b = hi;
    if (range != "*") {
      if (const auto dash = range.find('-'); dash != std::string::npos) {
        a = to_int(range.substr(0, dash), name);
        b = to_int(range.substr(dash + 1), name);
      } else {
        a = b = to_int(range, name);
        if (item.find('/') != std::string::npos) b = hi;
      }
    }
    if (a < lo || b > hi || a > b) {
      throw ConfigError("cron " + std::string(name) + " value \"" + item +
                        "\" outside " + std::to_string(lo) + "-" +
                        std::to_string(hi));
    }
    for (int v = a; v <= b; v += step) out.set(static_cast<std::size_t>(v));
  }
}

}  // namespace

Schedule Schedule::Parse(std::string_view spec_text) {
  Schedule s;
  s.spec_ = std::string(spec_text);
  std::string spec = s.spec_;
  if (spec == "@hourly") spec = "0 * * * *";
  if (spec == "@daily") spec = "0 0 * * *";
  if (spec == "@weekly") spec = "0 0 * * 0";

  if (spec.rfind("every ", 0) == 0) {
    std::string body = spec.substr(6);
    if (body.size() < 2) throw ConfigError("invalid interval \"" + spec + "\"");
    const char unit = body.back();
    const std::int64_t n = to_int(body.substr(0, body.size() - 1), "interval");
    std::int64_t mult = 0;
    switch (unit) {
      case 's': mult = 1; break;
      case 'm': mult = 60; break;
      case 'h': mult = 3600; break;
      case 'd': mult = 86400; break;
      default:
        throw ConfigError("invalid interval unit in \"" + spec + "\"");
    }
    if (n <= 0) throw ConfigError("interval must be positive: \"" + spec + "\"");
    s.interval_secs_ = n * mult;
    return s;
  }

  std::istringstream in(spec);
  std::vector<std::string> fields;
  for (std::string f; in >> f;) fields.push_back(f);
  if (fields.size() != 5) {
    throw ConfigError("cron spec needs 5 fields: \"" + s.spec_ + "\"");
  }
  parse_field(fields[0], 0, 59, "minute", s.minutes_);
  parse_field(fields[1], 0, 23, "hour", s.hours_);
  parse_field(fields[2], 1, 31, "day-of-month", s.days_);
  parse_field(fields[3], 1, 12, "month", s.months_);
  std::bitset<8> dow;
  parse_field(fields[4], 0, 7, "day-of-week", dow);
  for (std::size_t i = 0; i < 7; ++i) s.weekdays_[i] = dow[i];
  if (dow[7]) s.weekdays_.set(0);
  s.dom_restricted_ = fields[2] != "*";
  s.dow_restricted_ = fields[4] != "*";
  return s;
}

bool Schedule::day_matches(int dom, int month, int dow) const {
  if (!months_[static_cast<std::size_t>(month)]) return false;
  const bool dom_ok = days_[static_cast<std::size_t>(dom)];
  const bool dow_ok = weekdays_[static_cast<std::size_t>(dow)];
  // Classic cron: when both are restricted either may match.
  if (dom_restricted_ && dow_restricted_) return dom_ok || dow_ok;
  return dom_ok && dow_ok;
}

Timestamp Schedule::next_after(Timestamp t) const {
  if (is_interval()) return t + interval_secs_;
  using namespace std::chrono;
  std::int64_t start = (t.epoch_seconds() / 60 + 1) * 60;
  if (t.epoch_seconds() < 0 && t.epoch_seconds() % 60 != 0) start -= 60;
  std::int64_t day = start >= 0 ? start / 86400 : (start - 86399) / 86400;
  int first_minute = static_cast<int>((start - day * 86400) / 60);
  // Cron can require up to four years (Feb 29) before a match.
  for (int i = 0; i < 366 * 5; ++i, ++day, first_minute = 0) {
    const sys_days sd{days{day}};
    const year_month_day ymd{sd};
    const int dow = static_cast<int>(weekday{sd}.c_encoding());
    if (!day_matches(static_cast<int>(static_cast<unsigned>(ymd.day())),
                     static_cast<int>(static_cast<unsigned>(ymd.month())),
                     dow)) {
      continue;
    }
    for (int m = first_minute; m < 24 * 60; ++m) {
      if (hours_[static_cast<std::size_t>(m / 60)] &&
          minutes_[static_cast<std::size_t>(m % 60)]) {
        return Timestamp(day * 86400 + m * 60);
      }
    }
  }
  throw ConfigError("cron spec never fires: \"" + spec_ + "\"");
}

RetrainTrigger::RetrainTrigger(Schedule schedule, Timestamp start)
    : schedule_(std::move(schedule)), next_due_(schedule_.next_after(start)) {}

bool RetrainTrigger::poll(Timestamp now) {
  if (now < next_due_) return false;
  ++fired_;
  next_due_ = schedule_.next_after(now);
  return true;
}

}  // namespace sentinel::retrain
