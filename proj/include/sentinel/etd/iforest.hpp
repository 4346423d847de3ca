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

#ifndef SENTINEL_ETD_IFOREST_HPP_
#define SENTINEL_ETD_IFOREST_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "sentinel/etd/linalg.hpp"

namespace sentinel::etd {

// Average unsuccessful-search path length in a BST of n points:
// c(n) = 2 H(n-1) - 2 (n-1) / n, with c(1) = 0 and c(2) = 1.
double average_path_length(std::size_t n);

struct IsolationNode {
  int feature = -1;  // -1 marks a leaf
  double split = 0.0;
  int left = -1;
  int right = -1;
  int size = 0;  // training points that reached the node

  bool is_leaf() const { return feature < 0; }
  bool operator==(const IsolationNode&) const = default;
};

struct IsolationTree {
  std::vector<IsolationNode> nodes;  // nodes[0] is the root
  bool operator==(const IsolationTree&) const = default;
};

struct IsolationForestModel {
  std::vector<IsolationTree> trees;
  std::size_t dim = 0;
  std::size_t subsample = 256;  // effective psi = min(requested, rows)
  std::size_t tree_count = 100;
  std::uint64_t seed = 0;
  double threshold = 0.7;

  double normalizer() const { return average_path_length(subsample); }
  int depth_limit() const;
};

// Throws TrainingError for fewer than 2 rows.
IsolationForestModel build_iforest(const Matrix& rows,
                                   std::size_t tree_count = 100,
                                   std::size_t subsample = 256,
                                   std::uint64_t seed = 42);

// Path length of x through one tree including the c(size) leaf adjustment.
double path_length(const IsolationTree& tree, std::span<const double> x);

// 2^(-E[h(x)] / c(psi)). Throws ScoringError on a dimension mismatch.
double iforest_score(const IsolationForestModel& m, std::span<const double> x);

}  // namespace sentinel::etd

#endif  // SENTINEL_ETD_IFOREST_HPP_
