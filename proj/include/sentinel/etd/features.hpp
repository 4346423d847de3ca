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

#ifndef SENTINEL_ETD_FEATURES_HPP_
#define SENTINEL_ETD_FEATURES_HPP_

#include <cstdint>
#include <deque>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sentinel/core/features.hpp"
#include "sentinel/etd/geo.hpp"
#include "sentinel/etd/linalg.hpp"
#include "sentinel/ssh/parser.hpp"

namespace sentinel::etd {

struct FeatureConfig {
  std::int64_t freq_window_secs = 3600;
  double geo_impute = 0.0;  // used for IPs without a geo entry
};

// Streaming feature encoder; records must arrive time-ordered.
class FeatureExtractor {
 public:
  FeatureExtractor(const GeoTable* geo, FeatureConfig cfg);

  EtdFeatureRow next(const ssh::SshAuthRecord& rec);

  std::size_t missing_geo() const { return missing_geo_; }
  void set_geo_impute(double v) { cfg_.geo_impute = v; }

 private:
  struct IpHistory {
    std::deque<Timestamp> seen;
    int consecutive_failures = 0;
  };
  const GeoTable* geo_;
  FeatureConfig cfg_;
  std::unordered_map<IpAddress, IpHistory> history_;
  std::size_t missing_geo_ = 0;
};

std::vector<EtdFeatureRow> extract_features(
    std::span<const ssh::SshAuthRecord> records, const GeoTable& geo,
    std::int64_t freq_window_secs, double geo_impute = 0.0,
    std::size_t* missing_geo = nullptr);

// Training data: optional leading `timestamp` column, the six mandatory
// columns, and optionally repo_event_count,url_risk.
struct Dataset {
  std::vector<EtdFeatureRow> rows;
  std::vector<Timestamp> timestamps;  // empty without a timestamp column
  bool has_optional = false;
};

Dataset read_dataset_csv(std::istream& in);
Dataset read_dataset_csv(const std::filesystem::path& path);
void write_dataset_csv(std::ostream& out, std::span<const EtdFeatureRow> rows,
                       std::span<const Timestamp> timestamps = {});

// Rows -> n x (6|8) matrix. Throws ValidationError when optional columns
// are present on some rows only.
Matrix to_matrix(std::span<const EtdFeatureRow> rows);

std::vector<std::string> feature_names(bool with_optional);

}  // namespace sentinel::etd

#endif  // SENTINEL_ETD_FEATURES_HPP_
