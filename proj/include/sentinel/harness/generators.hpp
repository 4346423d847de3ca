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

#ifndef SENTINEL_HARNESS_GENERATORS_HPP_
#define SENTINEL_HARNESS_GENERATORS_HPP_

#include <string>
#include <vector>

#include "sentinel/core/features.hpp"
#include "sentinel/etd/linalg.hpp"
#include "sentinel/harness/scenario.hpp"

namespace sentinel::harness {

struct SshLogs {
  std::vector<std::string> lines;
  std::vector<IpAddress> brute_force_ips;  // sorted
};

// Syslog lines in time order. Ground truth lists every IP whose failures
// (attack or background) fill a closed bf_window_secs window at least
// bf_threshold times.
SshLogs gen_ssh_logs(const Scenario& s);

struct EtdStream {
  std::vector<EtdFeatureRow> rows;
  std::vector<bool> labels;  // true = injected anomaly
  std::vector<Timestamp> timestamps;
};

// The fixed baseline distribution of normal rows.
const std::array<double, 6>& etd_baseline_mean();
const etd::Matrix& etd_baseline_covariance();

// Normal rows come from the baseline Gaussian; anomalies are shifted by
// anomaly_shift whitened units in a random direction.
EtdStream gen_etd_stream(const Scenario& s);

struct UrlSample {
  std::string url;
  bool phishing = false;
};

std::vector<UrlSample> gen_urls(const Scenario& s);

// `n` distinct random registered domains.
std::vector<std::string> gen_blacklist_domains(std::size_t n,
                                               std::uint64_t seed);

}  // namespace sentinel::harness

#endif  // SENTINEL_HARNESS_GENERATORS_HPP_
