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

#include "sentinel/core/features.hpp"

#include <string>

#include "sentinel/core/errors.hpp"

namespace sentinel {

bool has_optional_features(const EtdFeatureRow& row) {
  if (row.repo_event_count.has_value() != row.url_risk.has_value()) {
    throw ScoringError(
        "feature row has only one of repo_event_count/url_risk");
  }
  return row.repo_event_count.has_value();
}

std::vector<double> to_vector(const EtdFeatureRow& row) {
  std::vector<double> v = {row.hour,            row.ip_numeric,
                           row.status,          row.failed_attempts,
                           row.freq,            row.geo_distance};
  if (has_optional_features(row)) {
    v.push_back(*row.repo_event_count);
    v.push_back(*row.url_risk);
  }
  return v;
}

EtdFeatureRow from_vector(const std::vector<double>& values) {
  if (values.size() != 6 && values.size() != 8) {
    throw ParseError("feature vector must have 6 or 8 values, got " +
                     std::to_string(values.size()));
  }
  EtdFeatureRow row;
  row.hour = values[0];
  row.ip_numeric = values[1];
  row.status = values[2];
  row.failed_attempts = values[3];
  row.freq = values[4];
  row.geo_distance = values[5];
  if (values.size() == 8) {
    row.repo_event_count = values[6];
    row.url_risk = values[7];
  }
  return row;
}

}  // namespace sentinel
