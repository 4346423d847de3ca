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

#ifndef SENTINEL_CORE_TIMESTAMP_HPP_
#define SENTINEL_CORE_TIMESTAMP_HPP_

#include <chrono>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace sentinel {

// UTC instant with second precision.
class Timestamp {
 public:
  constexpr Timestamp() = default;
  constexpr explicit Timestamp(std::int64_t epoch_seconds)
      : seconds_(epoch_seconds) {}

  static Timestamp FromCivil(int year, unsigned month, unsigned day,
                             int hour = 0, int minute = 0, int second = 0);
  static Timestamp Now();

  constexpr std::int64_t epoch_seconds() const { return seconds_; }

  constexpr Timestamp operator+(std::int64_t secs) const {
    return Timestamp(seconds_ + secs);
  }
  constexpr Timestamp operator-(std::int64_t secs) const {
    return Timestamp(seconds_ - secs);
  }
  constexpr std::int64_t operator-(Timestamp other) const {
    return seconds_ - other.seconds_;
  }

  constexpr auto operator<=>(const Timestamp&) const = default;

 private:
  std::int64_t seconds_ = 0;
};

// "2025-02-12T15:23:01Z"
std::string format_iso8601(Timestamp ts);

// Compact form used in artifact versions: "20250212T152301Z".
std::string format_compact(Timestamp ts);

// Accepts ISO-8601 UTC ("2025-02-12T15:23:01Z") or syslog style
// ("Feb 12 15:23:01", day may be space padded); syslog text takes `year`.
// Throws ParseError echoing the input.
Timestamp parse_timestamp(std::string_view text, int year);
Timestamp parse_iso8601(std::string_view text);

// Non-throwing syslog "Mon DD HH:MM:SS" prefix parser; returns false on
// mismatch. Used on the hot parsing path.
bool try_parse_syslog_time(std::string_view text, int year, Timestamp& out);

int hour_of(Timestamp ts);
int current_year();

}  // namespace sentinel

#endif  // SENTINEL_CORE_TIMESTAMP_HPP_
