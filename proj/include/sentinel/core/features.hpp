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

#ifndef SENTINEL_CORE_FEATURES_HPP_
#define SENTINEL_CORE_FEATURES_HPP_

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace sentinel {

// Numeric feature vector for one authentication event. Values are held as
// doubles; counts and flags are integral for rows extracted from logs.
struct EtdFeatureRow {
  double hour = 0;             // 0-23
  double ip_numeric = 0;       // [0, 2^32)
  double status = 0;           // 1 accepted, 0 failed
  double failed_attempts = 0;  // consecutive failures including this one
  double freq = 0;             // events from the IP in the trailing window
  double geo_distance = 0;     // km from the reference centroid
  std::optional<double> repo_event_count;
  std::optional<double> url_risk;  // 0-100

  bool operator==(const EtdFeatureRow&) const = default;
};

inline constexpr std::size_t kMandatoryFeatureCount = 6;
inline constexpr std::array<std::string_view, 8> kFeatureNames = {
    "hour",          "ip_numeric",       "status",  "failed_attempts",
    "freq",          "geo_distance",     "repo_event_count", "url_risk"};

bool has_optional_features(const EtdFeatureRow& row);

// 6 or 8 values in kFeatureNames order. Throws ScoringError when only one
// of the optional columns is present.
std::vector<double> to_vector(const EtdFeatureRow& row);
EtdFeatureRow from_vector(const std::vector<double>& values);

}  // namespace sentinel

#endif  // SENTINEL_CORE_FEATURES_HPP_
