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

#ifndef SENTINEL_HARNESS_EVAL_HPP_
#define SENTINEL_HARNESS_EVAL_HPP_

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace sentinel::harness {

// Undefined ratios are left empty rather than reported as zero.
struct EvalReport {
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
  std::size_t true_negatives = 0;
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::optional<double> false_positive_rate;

  std::size_t items = 0;
  std::optional<double> throughput;  // items per second
  std::optional<double> latency_p50_ms;
  std::optional<double> latency_p99_ms;
  std::optional<double> latency_max_ms;

  std::string to_json() const;
};

// Index-keyed comparison. Throws ValidationError on length mismatch.
EvalReport evaluate(const std::vector<bool>& detections,
                    const std::vector<bool>& labels);

// Key-set comparison (true negatives are unknown and stay zero).
EvalReport evaluate(const std::set<std::string>& detections,
                    const std::set<std::string>& labels);

void fill_ratios(EvalReport& r);

// Nearest-rank percentile of `sorted`, p in (0, 1].
double percentile(std::span<const double> sorted, double p);

}  // namespace sentinel::harness

#endif  // SENTINEL_HARNESS_EVAL_HPP_
