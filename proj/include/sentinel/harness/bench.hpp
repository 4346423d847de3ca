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

#ifndef SENTINEL_HARNESS_BENCH_HPP_
#define SENTINEL_HARNESS_BENCH_HPP_

#include <cstdint>
#include <string_view>

#include "sentinel/harness/eval.hpp"

namespace sentinel::harness {

enum class BenchTarget { kSshParse, kPhishEval, kEtdScore };

// Throws ValidationError for unknown names.
BenchTarget parse_bench_target(std::string_view name);
std::string_view to_string(BenchTarget t);

struct BenchOptions {
  std::size_t n = 100'000;
  std::uint64_t seed = 42;
  std::size_t blacklist_size = 100'000;
  int workers = 1;
};

// Times n items one by one after an untimed warm-up of n/10. Reports
// throughput and latency percentiles only.
EvalReport run_bench(BenchTarget target, const BenchOptions& opts);

}  // namespace sentinel::harness

#endif  // SENTINEL_HARNESS_BENCH_HPP_
