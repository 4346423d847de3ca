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

#include "sentinel/retrain/retrain.hpp"

#include <cmath>

#include "sentinel/core/errors.hpp"
#include "sentinel/retrain/schedule.hpp"

namespace sentinel::retrain {

void RetrainConfig::validate() const {
  if (window_days < 1) throw ConfigError("etd.window_days must be >= 1");
  if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0)) {
    throw ConfigError("etd.holdout_fraction must be in (0, 1)");
  }
  if (!(quantile > 0.0 && quantile < 1.0)) {
    throw ConfigError("etd.quantile must be in (0, 1)");
  }
  if (flag_rate_bound() < 0.0) {
    throw ConfigError("max holdout flag rate must be >= 0");
  }
  Schedule::Parse(schedule);
}

RetrainOutcome retrain(std::span<const TimedRow> rows, const RetrainConfig& cfg,
                       Timestamp trained_at) {
  cfg.validate();
  const std::size_t n = rows.size();
  const auto holdout = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * cfg.holdout_fraction));
  if (holdout == 0) {
    throw ValidationError("holdout set is empty (" + std::to_string(n) +
                          " rows, holdout_fraction " +
                          std::to_string(cfg.holdout_fraction) + ")");
  }
  const std::size_t fit_rows = n - holdout;

  std::vector<EtdFeatureRow> train;
  train.reserve(fit_rows);
  for (std::size_t i = 0; i < fit_rows; ++i) train.push_back(rows[i].row);
  std::vector<EtdFeatureRow> check;
  check.reserve(holdout);
  for (std::size_t i = fit_rows; i < n; ++i) check.push_back(rows[i].row);

  etd::TrainConfig tc = cfg.train;
  tc.quantile = cfg.quantile;
  tc.window_days = cfg.window_days;

  RetrainOutcome out;
  out.candidate = etd::train_artifact(train, tc, trained_at);
  const auto scores = etd::score_batch(out.candidate, check);
  ValidationReport& rep = out.report;
  rep.training_rows = fit_rows;
  rep.holdout_rows = holdout;
  for (const auto& s : scores) rep.holdout_flagged += s.anomalous ? 1 : 0;
  rep.holdout_flag_rate =
      static_cast<double>(rep.holdout_flagged) / static_cast<double>(holdout);
  rep.max_flag_rate = cfg.flag_rate_bound();
  rep.accepted = rep.holdout_flag_rate <= rep.max_flag_rate;
  rep.candidate_version = out.candidate.version;
  return out;
}

}  // namespace sentinel::retrain
