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

#include <algorithm>

#include "sentinel/core/errors.hpp"
#include "sentinel/retrain/retrain.hpp"

namespace sentinel::retrain {

std::vector<TimedRow> select_window(std::span<const TimedRow> events,
                                    Timestamp now, int window_days) {
  if (window_days < 1) throw ConfigError("etd.window_days must be >= 1");
  const Timestamp start = now - static_cast<std::int64_t>(window_days) * 86400;
  std::vector<TimedRow> out;
  for (const auto& e : events) {
    if (e.timestamp >= start && e.timestamp <= now) out.push_back(e);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const TimedRow& a, const TimedRow& b) {
                     return a.timestamp < b.timestamp;
                   });
  if (out.empty()) {
    throw ValidationError("retrain aborted: no events in the last " +
                          std::to_string(window_days) + " days before " +
                          format_iso8601(now));
  }
  return out;
}

}  // namespace sentinel::retrain
