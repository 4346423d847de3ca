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

#include "sentinel/etd/iforest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "sentinel/core/errors.hpp"

namespace sentinel::etd {
namespace {

double harmonic(std::size_t n) {
  double h = 0.0;
  for (std::size_t i = n; i >= 1; --i) h += 1.0 / static_cast<double>(i);
  return h;
}

class TreeBuilder {
 public:
  TreeBuilder(const Matrix& rows, int depth_limit, std::mt19937_64& rng)
      : rows_(rows), depth_limit_(depth_limit), rng_(rng) {}

  IsolationTree build(std::vector<std::size_t> sample) {
    IsolationTree tree;
    grow(tree, sample, 0, sample.size(), 0);
    return tree;
  }

 private:
  int grow(IsolationTree& tree, std::vector<std::size_t>& idx,
           std::size_t begin, std::size_t end, int depth) {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back({});
    tree.nodes[id].size = static_cast<int>(end - begin);
    if (end - begin <= 1 || depth >= depth_limit_) return id;

    // Features that still vary inside this node.
    std::vector<std::size_t> candidates;
    std::vector<std::pair<double, double>> ranges;
    for (std::size_t f = 0; f < rows_.cols(); ++f) {
      double lo = rows_(idx[begin], f);
      double hi = lo;
      for (std::size_t i = begin + 1; i < end; ++i) {
        const double v = rows_(idx[i], f);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (hi > lo) {
        candidates.push_back(f);
        ranges.emplace_back(lo, hi);
      }
    }
    if (candidates.empty()) return id;

    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    const std::size_t k = pick(rng_);
    const std::size_t feature = candidates[k];
    const auto [lo, hi] = ranges[k];
    std::uniform_real_distribution<double> between(lo, hi);
    double split = between(rng_);
    if (split <= lo) split = std::nextafter(lo, hi);

    const auto mid_it =
        std::partition(idx.begin() + static_cast<long>(begin),
                       idx.begin() + static_cast<long>(end),
                       [&](std::size_t r) { return rows_(r, feature) < split; });
    const auto mid = static_cast<std::size_t>(mid_it - idx.begin());

    const int left = grow(tree, idx, begin, mid, depth + 1);
    const int right = grow(tree, idx, mid, end, depth + 1);
    IsolationNode& node = tree.nodes[id];
    node.feature = static_cast<int>(feature);
    node.split = split;
    node.left = left;
    node.right = right;
    return id;
  }

  const Matrix& rows_;
  int depth_limit_;
  std::mt19937_64& rng_;
};

}  // namespace

double average_path_length(std::size_t n) {
  if (n <= 1) return 0.0;
  if (n == 2) return 1.0;
  const double nd = static_cast<double>(n);
  return 2.0 * harmonic(n - 1) - 2.0 * (nd - 1.0) / nd;
}

int IsolationForestModel::depth_limit() const {
  return static_cast<int>(std::ceil(std::log2(static_cast<double>(subsample))));
}

IsolationForestModel build_iforest(const Matrix& rows, std::size_t tree_count,
                                   std::size_t subsample, std::uint64_t seed) {
  if (rows.rows() < 2) {
    throw TrainingError("isolation forest needs at least 2 rows, got " +
                        std::to_string(rows.rows()));
  }
  if (tree_count == 0 || subsample < 2) {
    throw TrainingError("isolation forest needs tree_count >= 1, psi >= 2");
  }
  IsolationForestModel m;
  m.dim = rows.cols();
  m.subsample = std::min(subsample, rows.rows());
  m.tree_count = tree_count;
  m.seed = seed;
  m.trees.resize(tree_count);
  const int limit = m.depth_limit();

  const auto n = static_cast<std::ptrdiff_t>(tree_count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t t = 0; t < n; ++t) {
    // Per-tree stream keeps the result independent of thread scheduling.
    std::seed_seq seq{seed, static_cast<std::uint64_t>(t)};
    std::mt19937_64 rng(seq);
    std::vector<std::size_t> all(rows.rows());
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t i = 0; i < m.subsample; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
      std::swap(all[i], all[pick(rng)]);
    }
    all.resize(m.subsample);
    TreeBuilder builder(rows, limit, rng);
    m.trees[static_cast<std::size_t>(t)] = builder.build(std::move(all));
  }
  return m;
}

double path_length(const IsolationTree& tree, std::span<const double> x) {
  int id = 0;
  int depth = 0;
  while (!tree.nodes[static_cast<std::size_t>(id)].is_leaf()) {
    const auto& node = tree.nodes[static_cast<std::size_t>(id)];
    id = x[static_cast<std::size_t>(node.feature)] < node.split ? node.left
                                                                : node.right;
    ++depth;
  }
  const auto& leaf = tree.nodes[static_cast<std::size_t>(id)];
  return depth + average_path_length(static_cast<std::size_t>(leaf.size));
}

double iforest_score(const IsolationForestModel& m, std::span<const double> x) {
  if (x.size() != m.dim) {
    throw ScoringError("dimension mismatch: forest has " +
                       std::to_string(m.dim) + ", row has " +
                       std::to_string(x.size()));
  }
  double total = 0.0;
  for (const auto& tree : m.trees) total += path_length(tree, x);
  const double mean = total / static_cast<double>(m.trees.size());
  return std::exp2(-mean / m.normalizer());
}

}  // namespace sentinel::etd
