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

#include "sentinel/etd/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "sentinel/core/errors.hpp"

namespace sentinel::etd {

std::vector<double> NormalizationStats::normalize(
    std::span<const double> raw) const {
  std::vector<double> out(kept.size());
  normalize_into(raw, out);
  return out;
}

void NormalizationStats::normalize_into(std::span<const double> raw,
                                        std::span<double> out) const {
  if (raw.size() != input_dim()) {
    throw ScoringError("expected " + std::to_string(input_dim()) +
                       " features, got " + std::to_string(raw.size()));
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const std::size_t c = kept[i];
    out[i] = (raw[c] - mean[c]) / stddev[c];
  }
}

NormalizationStats fit_normalization(const Matrix& raw,
                                     std::span<const std::string> names) {
  const std::size_t n = raw.rows();
  const std::size_t cols = raw.cols();
  if (n < 2) throw TrainingError("need at least 2 rows to normalize");
  NormalizationStats s;
  s.mean.assign(cols, 0.0);
  s.stddev.assign(cols, 0.0);
  for (std::size_t c = 0; c < cols; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) sum += raw(r, c);
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double d = raw(r, c) - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    s.mean[c] = mean;
    s.stddev[c] = sd;
    if (sd > 1e-12 * std::max(1.0, std::abs(mean))) {
      s.kept.push_back(c);
    } else {
      s.dropped.push_back(c);
    }
  }
  if (s.kept.empty()) {
    std::string list;
    for (std::size_t c : s.dropped) {
      if (!list.empty()) list += ", ";
      list += c < names.size() ? names[c] : "column " + std::to_string(c);
    }
    throw TrainingError("all feature columns are constant: " + list);
  }
  return s;
}

Matrix GaussianModel::regularized() const {
  Matrix reg = covariance;
  for (std::size_t i = 0; i < dim; ++i) reg(i, i) += lambda;
  return reg;
}

void finalize(GaussianModel& m) {
  if (!cholesky(m.regularized(), m.cholesky_lower)) {
    throw TrainingError("regularized covariance is not positive definite");
  }
  m.inverse = inverse_from_cholesky(m.cholesky_lower);
}

GaussianModel fit_gaussian_normalized(const Matrix& x) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  if (n < d + 2) {
    throw TrainingError("need at least " + std::to_string(d + 2) +
                        " rows for " + std::to_string(d) +
                        " features, got " + std::to_string(n));
  }
  GaussianModel m;
  m.dim = d;
  m.mean.assign(d, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) m.mean[c] += x(r, c);
  }
  for (double& v : m.mean) v /= static_cast<double>(n);

  m.covariance = Matrix(d, d);
  std::vector<double> centered(d);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) centered[c] = x(r, c) - m.mean[c];
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        m.covariance(i, j) += centered[i] * centered[j];
      }
    }
  }
  double trace = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      m.covariance(i, j) /= static_cast<double>(n - 1);
      m.covariance(j, i) = m.covariance(i, j);
    }
    trace += m.covariance(i, i);
  }
  m.lambda = 1e-6 * trace / static_cast<double>(d);
  finalize(m);
  return m;
}

GaussianFit fit_gaussian(const Matrix& raw, double q,
                         std::span<const std::string> names) {
  if (!(q > 0.0 && q < 1.0)) {
    throw ValidationError("quantile must be in (0, 1)");
  }
  GaussianFit fit;
  fit.stats = fit_normalization(raw, names);
  const std::size_t d = fit.stats.dim();
  if (raw.rows() < d + 2) {
    throw TrainingError("need at least " + std::to_string(d + 2) +
                        " rows for " + std::to_string(d) +
                        " features, got " + std::to_string(raw.rows()));
  }
  fit.normalized = Matrix(raw.rows(), d);
  for (std::size_t r = 0; r < raw.rows(); ++r) {
    fit.stats.normalize_into(raw.row(r), fit.normalized.row(r));
  }
  fit.model = fit_gaussian_normalized(fit.normalized);
  fit.model.quantile = q;
  fit.model.tau = calibrate_tau(fit.model, fit.normalized, q);
  return fit;
}

double mahalanobis_score(const GaussianModel& m, std::span<const double> x) {
  if (x.size() != m.dim) {
    throw ScoringError("dimension mismatch: model has " +
                       std::to_string(m.dim) + ", row has " +
                       std::to_string(x.size()));
  }
  // S = |L^{-1} (x - mu)|^2; stack buffer for the usual small d.
  double stack[16];
  std::vector<double> heap;
  std::span<double> y;
  if (m.dim <= 16) {
    y = std::span<double>(stack, m.dim);
  } else {
    heap.resize(m.dim);
    y = heap;
  }
  for (std::size_t i = 0; i < m.dim; ++i) y[i] = x[i] - m.mean[i];
  forward_substitute(m.cholesky_lower, y);
  double s = 0.0;
  for (double v : y) s += v * v;
  return s;
}

double chi_squared_quantile(std::size_t dof, double q) {
  boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::quantile(dist, q);
}

double empirical_quantile(std::vector<double> values, double q) {
  if (values.empty()) throw ValidationError("empty sample for quantile");
  const auto n = values.size();
  auto k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
  k = std::clamp<std::size_t>(k, 1, n) - 1;
  std::nth_element(values.begin(), values.begin() + static_cast<long>(k),
                   values.end());
  return values[k];
}

double calibrate_tau(const GaussianModel& m, const Matrix& rows, double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw ValidationError("quantile must be in (0, 1)");
  }
  if (rows.rows() == 0) throw ValidationError("no rows to calibrate tau");
  std::vector<double> scores(rows.rows());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    scores[r] = mahalanobis_score(m, rows.row(r));
  }
  return std::max(empirical_quantile(std::move(scores), q),
                  chi_squared_quantile(m.dim, q));
}

}  // namespace sentinel::etd
