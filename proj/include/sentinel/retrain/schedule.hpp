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

#ifndef SENTINEL_RETRAIN_SCHEDULE_HPP_
#define SENTINEL_RETRAIN_SCHEDULE_HPP_

#include <bitset>
#include <cstdint>
#include <string>
#include <string_view>

#include "sentinel/core/timestamp.hpp"

namespace sentinel::retrain {

// Either a five-field cron expression ("0 3 * * 1"; fields support *, a,
// a-b, lists and /step; @hourly/@daily/@weekly aliases) or a fixed interval
// ("every 6h", units s/m/h/d). Times are UTC.
class Schedule {
 public:
  // Throws ConfigError naming the bad field.
  static Schedule Parse(std::string_view spec);

  // First firing instant strictly after `t`.
  Timestamp next_after(Timestamp t) const;

  const std::string& spec() const { return spec_; }
  bool is_interval() const { return interval_secs_ > 0; }

 private:
  bool day_matches(int dom, int month, int dow) const;

  std::string spec_;
  std::int64_t interval_secs_ = 0;
  std::bitset<60> minutes_;
  std::bitset<24> hours_;
  std::bitset<32> days_;    // 1..31
  std::bitset<13> months_;  // 1..12
  std::bitset<7> weekdays_; // 0 = Sunday
  bool dom_restricted_ = false;
  bool dow_restricted_ = false;
};

// Turns a schedule into triggers against an externally supplied clock.
// Ticks missed while the process was not polling fire once, not once each.
class RetrainTrigger {
 public:
  RetrainTrigger(Schedule schedule, Timestamp start);

  // True when a tick has come due since the previous firing.
  bool poll(Timestamp now);

  Timestamp next_due() const { return next_due_; }
  std::uint64_t fired() const { return fired_; }

 private:
  Schedule schedule_;
  Timestamp next_due_;
  std::uint64_t fired_ = 0;
};

}  // namespace sentinel::retrain

#endif  // SENTINEL_RETRAIN_SCHEDULE_HPP_
