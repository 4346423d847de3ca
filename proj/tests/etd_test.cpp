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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sentinel/core/errors.hpp"
#include "sentinel/core/ip.hpp"
#include "sentinel/etd/artifact.hpp"
#include "sentinel/etd/features.hpp"
#include "sentinel/etd/gaussian.hpp"
#include "sentinel/etd/geo.hpp"
#include "sentinel/etd/iforest.hpp"
#include "sentinel/etd/linalg.hpp"
#include "sentinel/harness/generators.hpp"

namespace sentinel::etd {
namespace {

Matrix gaussian_sample(std::size_t n, std::size_t d, std::uint64_t seed,
                       double mix = 0.5) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  Matrix m(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    double prev = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      // Correlated columns with different scales.
      const double v = z(rng) + mix * prev;
      m(i, j) = v * static_cast<double>(j + 1) + 3.0 * static_cast<double>(j);
      prev = v;
    }
  }
  return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

std::vector<double> raw_row(const Matrix& m, std::size_t i) {
  return {m.row(i).begin(), m.row(i).end()};
}

TEST(Linalg, CholeskyInverseMatchesGaussJordan) {
  const Matrix x = gaussian_sample(200, 5, 1);
  const Matrix cov = oracle::two_pass_covariance(x);
  Matrix lower;
  ASSERT_TRUE(cholesky(cov, lower));
  EXPECT_LT(max_abs_diff(inverse_from_cholesky(lower),
                         oracle::gauss_jordan_inverse(cov)),
            1e-9);
  Matrix singular(2, 2, 1.0);
  EXPECT_FALSE(cholesky(singular, lower));
}

TEST(FitGaussian, SymmetricSquare) {
  Matrix raw(4, 2);
  raw.data() = {0, 0, 2, 0, 0, 2, 2, 2};
  const GaussianFit fit = fit_gaussian(raw, 0.99);
  EXPECT_DOUBLE_EQ(fit.stats.mean[0], 1.0);
  EXPECT_DOUBLE_EQ(fit.stats.mean[1], 1.0);
  EXPECT_NEAR(fit.model.mean[0], 0.0, 1e-12);
  EXPECT_NEAR(fit.model.mean[1], 0.0, 1e-12);
}

TEST(FitGaussian, CovarianceMatchesTwoPassOracle) {
  const Matrix raw = gaussian_sample(1000, 4, 7);
  const GaussianFit fit = fit_gaussian(raw, 0.99);
  EXPECT_LT(max_abs_diff(fit.model.covariance,
                         oracle::two_pass_covariance(fit.normalized)),
            1e-10);
}

TEST(FitGaussian, NormalizedColumnsAreStandard) {
  const Matrix raw = gaussian_sample(500, 4, 9);
  const GaussianFit fit = fit_gaussian(raw, 0.99);
  const auto means = oracle::column_means(fit.normalized);
  const Matrix cov = oracle::two_pass_covariance(fit.normalized);
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_NEAR(means[j], 0.0, 1e-9);
    EXPECT_NEAR(std::sqrt(cov(j, j)), 1.0, 1e-9);
  }
}

TEST(FitGaussian, RegularizedInverseIsConsistent) {
  const GaussianFit fit = fit_gaussian(gaussian_sample(300, 4, 3), 0.99);
  const Matrix prod = multiply(fit.model.inverse, fit.model.regularized());
  EXPECT_LT(max_abs_diff(prod, Matrix::Identity(4)), 1e-8);
  double trace = 0.0;
  for (std::size_t i = 0; i < 4; ++i) trace += fit.model.covariance(i, i);
  EXPECT_DOUBLE_EQ(fit.model.lambda, 1e-6 * trace / 4.0);
}

TEST(FitGaussian, Errors) {
  Matrix too_few(4, 4);
  too_few.data() = {1, 2, 3, 4, 2, 3, 4, 1, 3, 4, 1, 2, 4, 1, 2, 3};
  EXPECT_THROW(fit_gaussian(too_few, 0.99), TrainingError);

  Matrix constant(20, 2, 5.0);
  const std::vector<std::string> names = {"hour", "status"};
  try {
    fit_gaussian(constant, 0.99, names);
    FAIL() << "expected TrainingError";
  } catch (const TrainingError& e) {
    EXPECT_NE(std::string(e.what()).find("status"), std::string::npos);
  }
}

TEST(FitGaussian, ConstantColumnDropped) {
  Matrix raw = gaussian_sample(100, 3, 4);
  for (std::size_t i = 0; i < raw.rows(); ++i) raw(i, 1) = 1.0;
  const GaussianFit fit = fit_gaussian(raw, 0.99);
  EXPECT_EQ(fit.stats.kept, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(fit.stats.dropped, (std::vector<std::size_t>{1}));
  EXPECT_EQ(fit.model.dim, 2u);
}

TEST(Mahalanobis, DiagonalExample) {
  GaussianModel m;
  m.dim = 2;
  m.mean = {0.0, 0.0};
  m.covariance = Matrix(2, 2);
  m.covariance(0, 0) = 4.0;
  m.covariance(1, 1) = 1.0;
  finalize(m);
  const std::vector<double> x = {2.0, 1.0};
  EXPECT_NEAR(mahalanobis_score(m, x), 2.0, 1e-12);
  EXPECT_EQ(mahalanobis_score(m, m.mean), 0.0);
  const std::vector<double> wrong = {1.0};
  EXPECT_THROW(mahalanobis_score(m, wrong), ScoringError);
}

TEST(Mahalanobis, MatchesExplicitInverseOracle) {
  const GaussianFit fit = fit_gaussian(gaussian_sample(400, 4, 21), 0.99);
  const Matrix inv = oracle::gauss_jordan_inverse(fit.model.regularized());
  std::mt19937_64 rng(99);
  std::normal_distribution<double> z(0.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> x(4);
    for (double& v : x) v = z(rng);
    const double s = mahalanobis_score(fit.model, x);
    EXPECT_GE(s, 0.0);
    EXPECT_NEAR(s, oracle::explicit_mahalanobis(inv, fit.model.mean, x),
                1e-8);
  }
  EXPECT_EQ(mahalanobis_score(fit.model, fit.model.mean), 0.0);
}

struct AffinePair {
  Matrix raw;
  Matrix mapped;
};

AffinePair affine_pair(std::uint64_t seed) {
  const std::size_t d = 4;
  AffinePair p{gaussian_sample(2000, d, seed), Matrix(2000, d)};
  std::mt19937_64 rng(seed + 9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix a(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) a(i, j) = u(rng) + (i == j ? 2.0 : 0.0);
  }
  for (std::size_t r = 0; r < p.raw.rows(); ++r) {
    for (std::size_t i = 0; i < d; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += a(i, j) * p.raw(r, j);
      p.mapped(r, i) = s;
    }
  }
  return p;
}

// Smallest eigenvalue of a symmetric positive definite matrix, by inverse
// power iteration on the oracle inverse.
double min_eigenvalue(const Matrix& m) {
  const Matrix inv = oracle::gauss_jordan_inverse(m);
  std::vector<double> v(m.rows(), 1.0);
  double norm = 0.0;
  for (int it = 0; it < 500; ++it) {
    std::vector<double> w(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = 0; j < v.size(); ++j) w[i] += inv(i, j) * v[j];
    }
    norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = w[i] / norm;
  }
  return 1.0 / norm;
}

TEST(Mahalanobis, AffineInvariantWithoutRidge) {
  for (std::uint64_t seed : {8, 9, 10}) {
    const AffinePair p = affine_pair(seed);
    GaussianFit f1 = fit_gaussian(p.raw, 0.99);
    GaussianFit f2 = fit_gaussian(p.mapped, 0.99);
    f1.model.lambda = f2.model.lambda = 0.0;
    finalize(f1.model);
    finalize(f2.model);
    for (std::size_t r = 0; r < 200; ++r) {
      const double s1 =
          mahalanobis_score(f1.model, f1.stats.normalize(raw_row(p.raw, r)));
      const double s2 = mahalanobis_score(
          f2.model, f2.stats.normalize(raw_row(p.mapped, r)));
      ASSERT_NEAR(s1, s2, 1e-9) << "seed " << seed << " row " << r;
    }
  }
}

// The ridge is added in each fit's own normalized coordinates, so it is not
// reparametrization invariant. Each score moves by at most
// lambda * S / min_eig(Sigma) from its unregularized value.
TEST(Mahalanobis, RidgeDeviationWithinBound) {
  for (std::uint64_t seed : {8, 9, 10}) {
    const AffinePair p = affine_pair(seed);
    const GaussianFit f1 = fit_gaussian(p.raw, 0.99);
    const GaussianFit f2 = fit_gaussian(p.mapped, 0.99);
    const double slack = f1.model.lambda / min_eigenvalue(f1.model.covariance) +
                         f2.model.lambda / min_eigenvalue(f2.model.covariance);
    for (std::size_t r = 0; r < 200; ++r) {
      const double s1 =
          mahalanobis_score(f1.model, f1.stats.normalize(raw_row(p.raw, r)));
      const double s2 = mahalanobis_score(
          f2.model, f2.stats.normalize(raw_row(p.mapped, r)));
      ASSERT_LE(std::abs(s1 - s2), slack * std::max(s1, s2) * 1.01)
          << "seed " << seed << " row " << r;
    }
  }
}

TEST(CalibrateTau, ChiSquaredClosedFormForTwoDims) {
  EXPECT_NEAR(chi_squared_quantile(2, 0.99), -2.0 * std::log(0.01), 1e-9);
  EXPECT_NEAR(chi_squared_quantile(2, 0.99), 9.2103, 1e-3);
}

TEST(CalibrateTau, FlagRateBoundedAndMaxRule) {
  const GaussianFit fit = fit_gaussian(gaussian_sample(10000, 2, 42, 0.0), 0.99);
  EXPECT_NEAR(fit.model.tau, 9.2103, 0.05);
  EXPECT_GE(fit.model.tau, chi_squared_quantile(2, 0.99));
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < fit.normalized.rows(); ++i) {
    if (mahalanobis_score(fit.model, fit.normalized.row(i)) > fit.model.tau) {
      ++flagged;
    }
  }
  EXPECT_LE(static_cast<double>(flagged) / 10000.0, 0.01 + 1.0 / 10000.0);
}

TEST(CalibrateTau, QuantileEdges) {
  const GaussianFit fit = fit_gaussian(gaussian_sample(1000, 3, 5), 0.99);
  std::vector<double> scores;
  for (std::size_t i = 0; i < fit.normalized.rows(); ++i) {
    scores.push_back(mahalanobis_score(fit.model, fit.normalized.row(i)));
  }
  std::sort(scores.begin(), scores.end());
  EXPECT_GE(calibrate_tau(fit.model, fit.normalized, 0.5), scores[499]);
  EXPECT_THROW(calibrate_tau(fit.model, fit.normalized, 1.0), ValidationError);
  EXPECT_THROW(calibrate_tau(fit.model, fit.normalized, 0.0), ValidationError);
  EXPECT_DOUBLE_EQ(empirical_quantile({3, 1, 2, 4}, 0.5), 2.0);
  EXPECT_DOUBLE_EQ(empirical_quantile({3, 1, 2, 4}, 0.51), 3.0);

  // Tiny spread: every score is below the chi-squared term.
  Matrix tight(50, 2);
  for (std::size_t i = 0; i < 50; ++i) {
    tight(i, 0) = i % 2 ? 1.0 : -1.0;
    tight(i, 1) = (i / 2) % 2 ? 1.0 : -1.0;
  }
  const GaussianFit t = fit_gaussian(tight, 0.99);
  EXPECT_DOUBLE_EQ(t.model.tau, chi_squared_quantile(2, 0.99));
}

TEST(IsolationForest, AveragePathLength) {
  EXPECT_EQ(average_path_length(1), 0.0);
  EXPECT_DOUBLE_EQ(average_path_length(2), 1.0);
  // 2 H(2) - 2*2/3 = 3 - 4/3.
  EXPECT_NEAR(average_path_length(3), 3.0 - 4.0 / 3.0, 1e-12);
  double h = 0.0;
  for (int i = 1; i <= 255; ++i) h += 1.0 / i;
  EXPECT_NEAR(average_path_length(256), 2.0 * h - 2.0 * 255.0 / 256.0, 1e-12);
}

int depth_of(const IsolationTree& t, int node = 0) {
  const auto& n = t.nodes[static_cast<std::size_t>(node)];
  if (n.is_leaf()) return 0;
  return 1 + std::max(depth_of(t, n.left), depth_of(t, n.right));
}

TEST(IsolationForest, DeterministicAndDepthCapped) {
  const Matrix rows = gaussian_sample(2000, 4, 12);
  const auto a = build_iforest(rows, 50, 256, 42);
  const auto b = build_iforest(rows, 50, 256, 42);
  const auto c = build_iforest(rows, 50, 256, 43);
  EXPECT_EQ(a.trees, b.trees);
  EXPECT_NE(a.trees, c.trees);
  EXPECT_EQ(a.depth_limit(), 8);
  for (const auto& t : a.trees) {
    EXPECT_LE(depth_of(t), a.depth_limit());
    EXPECT_EQ(t.nodes[0].size, 256);
  }
  for (std::size_t i = 0; i < 100; ++i) {
    const double s = iforest_score(a, rows.row(i));
    EXPECT_GT(s, 0.0);
    EXPECT_LT(s, 1.0);
  }
  EXPECT_THROW(build_iforest(Matrix(1, 4), 10, 256, 1), TrainingError);
  const std::vector<double> wrong = {1.0};
  EXPECT_THROW(iforest_score(a, wrong), ScoringError);
}

TEST(IsolationForest, IdenticalRowsScoreHalf) {
  Matrix rows(64, 3, 2.5);
  const auto m = build_iforest(rows, 20, 64, 42);
  EXPECT_NEAR(iforest_score(m, rows.row(0)), 0.5, 1e-12);
}

TEST(IsolationForest, SubsampleShrinksToRowCount) {
  const auto m = build_iforest(gaussian_sample(40, 2, 1), 10, 256, 1);
  EXPECT_EQ(m.subsample, 40u);
}

TEST(IsolationForest, OutlierScoresAboveInliers) {
  Matrix rows = gaussian_sample(1001, 3, 42, 0.0);
  for (std::size_t j = 0; j < 3; ++j) rows(1000, j) = 60.0;
  const auto m = build_iforest(rows, 100, 256, 42);
  std::vector<double> inliers;
  for (std::size_t i = 0; i < 1000; ++i) {
    inliers.push_back(iforest_score(m, rows.row(i)));
  }
  std::sort(inliers.begin(), inliers.end());
  EXPECT_GT(iforest_score(m, rows.row(1000)), inliers[899]);
}

TEST(Geo, HaversineAndLongestPrefix) {
  EXPECT_NEAR(haversine_km({51.5007, 0.1246}, {40.6892, 74.0445}), 5574.8,
              1.0);
  EXPECT_EQ(haversine_km({10, 20}, {10, 20}), 0.0);
  GeoTable geo(LatLon{0, 0});
  geo.add("10.0.0.0/8", {1, 1});
  geo.add("10.1.0.0/16", {2, 2});
  EXPECT_EQ(geo.lookup(parse_ip("10.1.2.3")), (LatLon{2, 2}));
  EXPECT_EQ(geo.lookup(parse_ip("10.2.2.3")), (LatLon{1, 1}));
  EXPECT_FALSE(geo.lookup(parse_ip("11.0.0.1")).has_value());
  EXPECT_THROW(geo.add("10.0.0.0/33", {0, 0}), ParseError);
}

ssh::SshAuthRecord record(Timestamp t, const char* ip, bool ok) {
  ssh::SshAuthRecord r;
  r.timestamp = t;
  r.ip = parse_ip(ip);
  r.status = ok ? ssh::AuthStatus::kAccepted : ssh::AuthStatus::kFailed;
  return r;
}

TEST(Features, SingleAcceptedRecordAtCentroid) {
  GeoTable geo(LatLon{40.0, -74.0});
  geo.add("192.168.0.0/16", {40.0, -74.0});
  const std::vector<ssh::SshAuthRecord> recs = {record(
      Timestamp::FromCivil(2025, 2, 12, 15, 23, 1), "192.168.1.12", true)};
  const auto rows = extract_features(recs, geo, 3600);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].hour, 15);
  EXPECT_EQ(rows[0].ip_numeric, 3232235788.0);
  EXPECT_EQ(rows[0].status, 1);
  EXPECT_EQ(rows[0].failed_attempts, 0);
  EXPECT_EQ(rows[0].freq, 1);
  EXPECT_EQ(rows[0].geo_distance, 0);
}

TEST(Features, ConsecutiveFailuresResetOnSuccess) {
  const Timestamp t0 = Timestamp::FromCivil(2025, 1, 1, 0, 0, 0);
  const std::vector<ssh::SshAuthRecord> recs = {
      record(t0, "1.2.3.4", false), record(t0 + 1, "1.2.3.4", false),
      record(t0 + 2, "1.2.3.4", false), record(t0 + 3, "1.2.3.4", true)};
  std::size_t missing = 0;
  const auto rows = extract_features(recs, GeoTable(), 3600, 123.0, &missing);
  std::vector<double> got;
  for (const auto& r : rows) got.push_back(r.failed_attempts);
  EXPECT_EQ(got, (std::vector<double>{1, 2, 3, 0}));
  EXPECT_EQ(missing, 4u);
  EXPECT_EQ(rows[0].geo_distance, 123.0);
}

TEST(Features, MatchRecountOracles) {
  std::mt19937_64 rng(500);
  std::uniform_int_distribution<int> ip(1, 12), gap(0, 400), ok(0, 2);
  std::vector<ssh::SshAuthRecord> recs;
  Timestamp t = Timestamp::FromCivil(2025, 1, 1, 0, 0, 0);
  for (int i = 0; i < 500; ++i) {
    t = t + gap(rng);
    const std::string addr = "10.0.0." + std::to_string(ip(rng));
    recs.push_back(record(t, addr.c_str(), ok(rng) == 0));
  }
  const auto rows = extract_features(recs, GeoTable(), 1800);
  const auto freq = oracle::freq_recount(recs, 1800);
  const auto fails = oracle::consecutive_failures_recount(recs);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ASSERT_EQ(rows[i].freq, freq[i]) << "row " << i;
    ASSERT_EQ(rows[i].failed_attempts, fails[i]) << "row " << i;
  }
}

TEST(DatasetCsv, RoundTrip) {
  harness::Scenario s;
  s.rows = 50;
  const auto stream = harness::gen_etd_stream(s);
  std::stringstream buf;
  write_dataset_csv(buf, stream.rows, stream.timestamps);
  const Dataset back = read_dataset_csv(buf);
  EXPECT_EQ(back.rows, stream.rows);
  EXPECT_EQ(back.timestamps, stream.timestamps);
  EXPECT_FALSE(back.has_optional);
}

TEST(DatasetCsv, OptionalColumnsAndErrors) {
  std::stringstream ok(
      "hour,ip_numeric,status,failed_attempts,freq,geo_distance,"
      "repo_event_count,url_risk\n1,2,1,0,1,0,3,40\n");
  const Dataset d = read_dataset_csv(ok);
  ASSERT_TRUE(d.has_optional);
  EXPECT_EQ(d.rows[0].url_risk, 40.0);

  std::stringstream bad_header("a,b,c\n1,2,3\n");
  EXPECT_THROW(read_dataset_csv(bad_header), ParseError);
  std::stringstream bad_value(
      "hour,ip_numeric,status,failed_attempts,freq,geo_distance\n"
      "1,2,x,0,1,0\n");
  EXPECT_THROW(read_dataset_csv(bad_value), ParseError);
}

EtdModelArtifact small_artifact(std::uint64_t seed = 42) {
  harness::Scenario s;
  s.rows = 2000;
  s.anomaly_rate = 0.0;
  s.seed = seed;
  const auto stream = harness::gen_etd_stream(s);
  TrainConfig cfg;
  cfg.tree_count = 30;
  return train_artifact(stream.rows, cfg,
                        Timestamp::FromCivil(2025, 3, 1, 0, 0, 0));
}

TEST(Artifact, RoundTripScoresBitEqual) {
  const EtdModelArtifact a = small_artifact();
  EXPECT_EQ(a.version.substr(0, 17), "20250301T000000Z-");
  const std::string text = artifact_to_json(a);
  EXPECT_EQ(text.rfind("{\"version\":", 0), 0u);
  const EtdModelArtifact b = artifact_from_json(text);
  EXPECT_EQ(b.version, a.version);
  EXPECT_EQ(artifact_to_json(b), text);
  harness::Scenario s;
  s.rows = 300;
  s.seed = 7;
  for (const auto& row : harness::gen_etd_stream(s).rows) {
    const auto ra = score_event(a, row);
    const auto rb = score_event(b, row);
    EXPECT_EQ(ra.mahalanobis, rb.mahalanobis);
    EXPECT_EQ(ra.iforest, rb.iforest);
    EXPECT_EQ(ra.anomalous, rb.anomalous);
  }
}

TEST(Artifact, SameInputsSameVersion) {
  EXPECT_EQ(small_artifact(3).version, small_artifact(3).version);
  EXPECT_NE(small_artifact(3).version, small_artifact(4).version);
}

TEST(Artifact, CorruptionDetected) {
  const std::string text = artifact_to_json(small_artifact());
  std::string tampered = text;
  const auto pos = tampered.find("\"tau\":") + 6;
  tampered[pos] = tampered[pos] == '9' ? '8' : '9';
  EXPECT_THROW(artifact_from_json(tampered), CorruptArtifactError);
  EXPECT_THROW(artifact_from_json(text.substr(0, text.size() / 2)),
               CorruptArtifactError);
  EXPECT_THROW(artifact_from_json("{}"), CorruptArtifactError);
}

TEST(ScoreEvent, MeanRowAndBoundary) {
  EtdModelArtifact a = small_artifact();
  EtdFeatureRow mean_row;
  mean_row.hour = a.stats.mean[0];
  mean_row.ip_numeric = a.stats.mean[1];
  mean_row.status = a.stats.mean[2];
  mean_row.failed_attempts = a.stats.mean[3];
  mean_row.freq = a.stats.mean[4];
  mean_row.geo_distance = a.stats.mean[5];
  const auto r = score_event(a, mean_row);
  EXPECT_NEAR(r.mahalanobis, 0.0, 1e-12);
  EXPECT_EQ(r.model_version, a.version);

  EtdFeatureRow far = mean_row;
  far.failed_attempts += 10 * a.stats.stddev[3];
  a.forest.threshold = 1.0;  // isolate the Mahalanobis rule
  const double s = score_event(a, far).mahalanobis;
  a.gaussian.tau = s;
  EXPECT_FALSE(score_event(a, far).anomalous);
  a.gaussian.tau = std::nextafter(s, 0.0);
  const auto hit = score_event(a, far);
  EXPECT_TRUE(hit.anomalous);
  EXPECT_EQ(hit.detector, Detector::kMahalanobis);
  EXPECT_EQ(triggering_score(hit), hit.mahalanobis);

  EtdFeatureRow missing = mean_row;
  missing.freq = std::nan("");
  EXPECT_THROW(score_event(a, missing), ScoringError);
}

TEST(ScoreEvent, IsolationForestTrigger) {
  EtdModelArtifact a = small_artifact();
  a.gaussian.tau = 1e300;
  a.forest.threshold = 0.0;
  const auto r = score_event(a, harness::gen_etd_stream({}).rows[0]);
  EXPECT_TRUE(r.anomalous);
  EXPECT_EQ(r.detector, Detector::kIsolationForest);
  EXPECT_EQ(triggering_score(r), r.iforest);
}

TEST(ScoreBatch, ParallelMatchesSerial) {
  const EtdModelArtifact a = small_artifact();
  harness::Scenario s;
  s.rows = 4000;
  s.seed = 77;
  const auto rows = harness::gen_etd_stream(s).rows;
  const auto par = score_batch(a, rows);
  const auto ser = reference::score_batch_serial(a, rows);
  ASSERT_EQ(par.size(), ser.size());
  for (std::size_t i = 0; i < par.size(); ++i) {
    EXPECT_EQ(par[i].mahalanobis, ser[i].mahalanobis);
    EXPECT_EQ(par[i].iforest, ser[i].iforest);
    EXPECT_EQ(par[i].anomalous, ser[i].anomalous);
  }
}

TEST(DetectStream, EventsCarryVersionAndTriggeringScore) {
  const EtdModelArtifact a = small_artifact();
  harness::Scenario clean;
  clean.rows = 200;
  clean.anomaly_rate = 0.0;
  clean.seed = 1234;
  // A clean stream may still produce a rare false positive, never many.
  EXPECT_LE(detect_stream(a, harness::gen_etd_stream(clean).rows).size(), 6u);

  harness::Scenario dirty;
  dirty.rows = 1000;
  dirty.anomaly_rate = 0.05;
  dirty.seed = 99;
  const auto stream = harness::gen_etd_stream(dirty);
  const auto events = detect_stream(a, stream.rows, stream.timestamps);
  const auto k = std::count(stream.labels.begin(), stream.labels.end(), true);
  EXPECT_GE(static_cast<double>(events.size()), 0.9 * static_cast<double>(k));
  for (const auto& e : events) {
    const auto& t = std::get<EmergentThreat>(e.payload);
    EXPECT_EQ(t.model_version, a.version);
    EXPECT_GT(t.anomaly_score, 0.0);
  }
}

}  // namespace
}  // namespace sentinel::etd
