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

#ifndef SENTINEL_ETD_ARTIFACT_HPP_
#define SENTINEL_ETD_ARTIFACT_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentinel/core/event.hpp"
#include "sentinel/core/features.hpp"
#include "sentinel/etd/gaussian.hpp"
#include "sentinel/etd/iforest.hpp"

namespace sentinel::etd {

struct TrainConfig {
  double quantile = 0.99;
  std::size_t tree_count = 100;
  std::size_t subsample = 256;
  double iforest_threshold = 0.7;
  std::uint64_t seed = 42;
  int window_days = 30;
};

// A fitted, immutable detector: normalization, Gaussian baseline, isolation
// forest and thresholds, identified by a content-derived version.
struct EtdModelArtifact {
  std::string version;
  Timestamp trained_at;
  std::vector<std::string> feature_names;
  NormalizationStats stats;
  GaussianModel gaussian;
  IsolationForestModel forest;
  int training_window_days = 30;
  std::uint64_t seed = 0;
  double geo_impute = 0.0;  // training mean of geo_distance
  std::size_t training_rows = 0;
};

// Throws TrainingError (too few rows, constant data) or ValidationError.
EtdModelArtifact train_artifact(std::span<const EtdFeatureRow> rows,
                                const TrainConfig& cfg, Timestamp trained_at);

// Canonical JSON; `version` is the first key.
std::string artifact_to_json(const EtdModelArtifact& a);

// Verifies that the version's hash matches the content. Throws
// CorruptArtifactError.
EtdModelArtifact artifact_from_json(std::string_view text);

// "<YYYYMMDDTHHMMSSZ>-<16 hex digits>" for the artifact's current content.
std::string compute_version(const EtdModelArtifact& a);

struct ScoreResult {
  double mahalanobis = 0.0;
  double iforest = 0.0;
  bool anomalous = false;
  Detector detector = Detector::kMahalanobis;
  std::string model_version;
};

// anomalous = S > tau or s > iforest threshold; mahalanobis wins ties.
// Throws ScoringError when the row does not fit the artifact's columns.
ScoreResult score_event(const EtdModelArtifact& a, const EtdFeatureRow& row);

// The score that triggered detection (or the Mahalanobis score otherwise).
double triggering_score(const ScoreResult& r);

// Scores every row, in parallel when OpenMP is available.
std::vector<ScoreResult> score_batch(const EtdModelArtifact& a,
                                     std::span<const EtdFeatureRow> rows);

namespace reference {
std::vector<ScoreResult> score_batch_serial(
    const EtdModelArtifact& a, std::span<const EtdFeatureRow> rows);
}  // namespace reference

// One EmergentThreat per anomalous row. `ips` and `times` are parallel to
// `rows`; when empty the IP is decoded from ip_numeric and the time is `now`.
std::vector<SecurityEvent> detect_stream(const EtdModelArtifact& a,
                                         std::span<const EtdFeatureRow> rows,
                                         std::span<const Timestamp> times = {},
                                         Timestamp now = Timestamp());

SecurityEvent make_threat_event(const EtdModelArtifact& a,
                                const EtdFeatureRow& row,
                                const ScoreResult& r, Timestamp when);

}  // namespace sentinel::etd

#endif  // SENTINEL_ETD_ARTIFACT_HPP_
