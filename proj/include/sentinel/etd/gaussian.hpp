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

#ifndef SENTINEL_ETD_GAUSSIAN_HPP_
#define SENTINEL_ETD_GAUSSIAN_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sentinel/etd/linalg.hpp"

namespace sentinel::etd {

// Per-column standardization fitted on training data. Columns whose sample
// std is zero (up to rounding) are dropped.
struct NormalizationStats {
  std::vector<double> mean;             // every input column
  std::vector<double> stddev;           // every input column
  std::vector<std::size_t> kept;        // indices of columns used
  std::vector<std::size_t> dropped;

  std::size_t input_dim() const { return mean.size(); }
  std::size_t dim() const { return kept.size(); }

  // Raw input row -> normalized vector over the kept columns.
  std::vector<double> normalize(std::span<const double> raw) const;
  void normalize_into(std::span<const double> raw, std::span<double> out) const;

  bool operator==(const NormalizationStats&) const = default;
};

// Mean/std per column (sample std, n-1). Throws TrainingError when every
// column is constant; names the columns via `names` when given.
NormalizationStats fit_normalization(const Matrix& raw,
                                     std::span<const std::string> names = {});

struct GaussianModel {
  std::size_t dim = 0;
  std::vector<double> mean;  // over normalized data
  Matrix covariance;         // sample covariance, unregularized
  double lambda = 0.0;       // ridge added to the diagonal
  Matrix cholesky_lower;     // of covariance + lambda I
  Matrix inverse;            // (covariance + lambda I)^{-1}
  double tau = 0.0;
  double quantile = 0.99;

  Matrix regularized() const;
};

struct GaussianFit {
  NormalizationStats stats;
  GaussianModel model;
  Matrix normalized;  // training rows after normalization
};

// Normalizes `raw`, estimates mean and covariance, regularizes with
// lambda = 1e-6 * trace / d and calibrates tau at quantile q.
// Throws TrainingError when fewer than d + 2 rows remain.
GaussianFit fit_gaussian(const Matrix& raw, double q,
                         std::span<const std::string> names = {});

// Estimates mean/covariance of already-normalized data and factorizes.
GaussianModel fit_gaussian_normalized(const Matrix& normalized);

// Rebuilds the factor and inverse from covariance and lambda.
void finalize(GaussianModel& m);

// (x - mu)^T (Sigma + lambda I)^{-1} (x - mu). Throws ScoringError on a
// dimension mismatch.
double mahalanobis_score(const GaussianModel& m, std::span<const double> x);

// Inverse CDF of chi-squared with `dof` degrees of freedom.
double chi_squared_quantile(std::size_t dof, double q);

// Order statistic at index ceil(q n) - 1.
double empirical_quantile(std::vector<double> values, double q);

// max(empirical q-quantile of training scores, chi-squared quantile).
// Throws ValidationError if q is outside (0, 1).
double calibrate_tau(const GaussianModel& m, const Matrix& normalized_rows,
                     double q);

}  // namespace sentinel::etd

#endif  // SENTINEL_ETD_GAUSSIAN_HPP_
