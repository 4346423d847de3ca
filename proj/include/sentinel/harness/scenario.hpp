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

#ifndef SENTINEL_HARNESS_SCENARIO_HPP_
#define SENTINEL_HARNESS_SCENARIO_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sentinel/core/ip.hpp"
#include "sentinel/core/timestamp.hpp"

namespace sentinel::harness {

struct AttackerBurst {
  IpAddress ip;
  std::int64_t start_secs = 0;  // offset from the scenario start
  int count = 0;
  std::int64_t spacing_secs = 1;
};

// Adds `shift` (raw feature units) to every ETD row from `after_row` on.
struct DriftSpec {
  std::size_t after_row = 0;
  std::array<double, 6> shift{};
};

struct Scenario {
  std::uint64_t seed = 42;
  double duration_hours = 24.0;
  double normal_login_rate = 60.0;  // events per hour
  double normal_failure_fraction = 0.1;
  std::vector<AttackerBurst> attacker_bursts;
  double anomaly_rate = 0.02;
  std::size_t rows = 5000;  // ETD stream length
  std::int64_t row_spacing_secs = 60;
  double anomaly_shift = 6.0;  // whitened units
  std::optional<DriftSpec> drift;
  std::size_t url_count = 1000;
  double phishing_rate = 0.2;
  Timestamp start = Timestamp::FromCivil(2024, 3, 1);
  // Rule used for brute-force ground truth.
  int bf_threshold = 5;
  std::int64_t bf_window_secs = 300;

  // Throws ValidationError.
  void validate() const;
};

// JSON object; unknown keys are rejected. Throws ParseError/ValidationError.
Scenario parse_scenario(std::string_view json);
Scenario load_scenario(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& s);

}  // namespace sentinel::harness

#endif  // SENTINEL_HARNESS_SCENARIO_HPP_
