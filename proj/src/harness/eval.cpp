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

#include "sentinel/harness/eval.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "sentinel/core/errors.hpp"

namespace sentinel::harness {
namespace {

using ojson = nlohmann::ordered_json;

void put(ojson& j, const char* key, const std::optional<double>& v) {
  if (v) j[key] = *v;
}

}  // namespace

void fill_ratios(EvalReport& r) {
  const double tp = static_cast<double>(r.true_positives);
  if (r.true_positives + r.false_positives > 0) {
    r.precision = tp / static_cast<double>(r.true_positives + r.false_positives);
  }
  if (r.true_positives + r.false_negatives > 0) {
    r.recall = tp / static_cast<double>(r.true_positives + r.false_negatives);
  }
  if (r.precision && r.recall && *r.precision + *r.recall > 0) {
    r.f1 = 2.0 * *r.precision * *r.recall / (*r.precision + *r.recall);
  }
  if (r.false_positives + r.true_negatives > 0) {
    r.false_positive_rate =
        static_cast<double>(r.false_positives) /
        static_cast<double>(r.false_positives + r.true_negatives);
  }
}

EvalReport evaluate(const std::vector<bool>& detections,
                    const std::vector<bool>& labels) {
  if (detections.size() != labels.size()) {
    throw ValidationError("evaluate: " + std::to_string(detections.size()) +
                          " detections vs " + std::to_string(labels.size()) +
                          " labels");
  }
  EvalReport r;
  r.items = labels.size();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (detections[i] && labels[i]) ++r.true_positives;
    else if (detections[i]) ++r.false_positives;
    else if (labels[i]) ++r.false_negatives;
    else ++r.true_negatives;
  }
  fill_ratios(r);
  return r;
}

EvalReport evaluate(const std::set<std::string>& detections,
                    const std::set<std::string>& labels) {
  EvalReport r;
  for (const auto& d : detections) {
    if (labels.contains(d)) ++r.true_positives;
    else ++r.false_positives;
  }
  for (const auto& l : labels) {
    if (!detections.contains(l)) ++r.false_negatives;
  }
  r.items = r.true_positives + r.false_positives + r.false_negatives;
  fill_ratios(r);
  return r;
}

double percentile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw ValidationError("percentile of an empty sample");
  if (!(p > 0.0 && p <= 1.0)) throw ValidationError("percentile p must be in (0, 1]");
  auto rank = static_cast<std::size_t>(std::ceil(p * static_cast<double>(sorted.size())));
  return sorted[std::max<std::size_t>(rank, 1) - 1];
}

std::string EvalReport::to_json() const {
  ojson j;
  j["true_positives"] = true_positives;
  j["false_positives"] = false_positives;
  j["false_negatives"] = false_negatives;
  j["true_negatives"] = true_negatives;
  put(j, "precision", precision);
  put(j, "recall", recall);
  put(j, "f1", f1);
  put(j, "false_positive_rate", false_positive_rate);
  j["items"] = items;
  put(j, "throughput", throughput);
  put(j, "latency_p50_ms", latency_p50_ms);
  put(j, "latency_p99_ms", latency_p99_ms);
  put(j, "latency_max_ms", latency_max_ms);
  return j.dump();
}

}  // namespace sentinel::harness
