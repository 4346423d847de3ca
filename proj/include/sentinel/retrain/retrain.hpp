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

#ifndef SENTINEL_RETRAIN_RETRAIN_HPP_
#define SENTINEL_RETRAIN_RETRAIN_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sentinel/etd/artifact.hpp"

namespace sentinel::retrain {

struct RetrainConfig {
  int window_days = 30;
  double holdout_fraction = 0.2;
  double quantile = 0.99;
  // Defaults to 2 * (1 - quantile).
  std::optional<double> max_holdout_flag_rate;
  std::string schedule = "0 3 * * 1";
  etd::TrainConfig train;

  double flag_rate_bound() const {
    return max_holdout_flag_rate.value_or(2.0 * (1.0 - quantile));
  }
  // Throws ConfigError.
  void validate() const;
};

struct TimedRow {
  Timestamp timestamp;
  EtdFeatureRow row;
  bool operator==(const TimedRow&) const = default;
};

// Rows with timestamp in [now - window_days, now], time-ordered (stable).
// Throws ValidationError when the selection is empty.
std::vector<TimedRow> select_window(std::span<const TimedRow> events,
                                    Timestamp now, int window_days);

struct ValidationReport {
  std::size_t training_rows = 0;
  std::size_t holdout_rows = 0;
  std::size_t holdout_flagged = 0;
  double holdout_flag_rate = 0.0;
  double max_flag_rate = 0.0;
  bool accepted = false;
  std::string candidate_version;
};

struct RetrainOutcome {
  etd::EtdModelArtifact candidate;
  ValidationReport report;
};

// Fits on the earliest (1 - holdout_fraction) of `rows` and validates on
// the most recent holdout_fraction. `rows` must be time-ordered.
RetrainOutcome retrain(std::span<const TimedRow> rows, const RetrainConfig& cfg,
                       Timestamp trained_at);

}  // namespace sentinel::retrain

#endif  // SENTINEL_RETRAIN_RETRAIN_HPP_
