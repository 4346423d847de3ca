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

#include "sentinel/etd/artifact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>

#include <nlohmann/json.hpp>

#include "sentinel/core/errors.hpp"
#include "sentinel/etd/features.hpp"

namespace sentinel::etd {
namespace {

using ordered_json = nlohmann::ordered_json;

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex16(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

ordered_json matrix_json(const Matrix& m) { return m.data(); }

Matrix matrix_from(const nlohmann::json& j, std::size_t n) {
  Matrix m(n, n);
  const auto values = j.get<std::vector<double>>();
  if (values.size() != n * n) {
    throw CorruptArtifactError("covariance has wrong size");
  }
  m.data() = values;
  return m;
}

// Everything except the version, in a fixed key order.
ordered_json content_json(const EtdModelArtifact& a) {
  ordered_json j;
  j["trained_at"] = format_iso8601(a.trained_at);
  j["feature_names"] = a.feature_names;
  j["training_window_days"] = a.training_window_days;
  j["training_rows"] = a.training_rows;
  j["seed"] = a.seed;
  j["geo_impute"] = a.geo_impute;
  j["stats"] = {{"mean", a.stats.mean},
                {"std", a.stats.stddev},
                {"kept", a.stats.kept},
                {"dropped", a.stats.dropped}};
  const GaussianModel& g = a.gaussian;
  j["gaussian"] = {{"dim", g.dim},
                   {"mean", g.mean},
                   {"covariance", matrix_json(g.covariance)},
                   {"lambda", g.lambda},
                   {"tau", g.tau},
                   {"quantile", g.quantile}};
  const IsolationForestModel& f = a.forest;
  ordered_json trees = ordered_json::array();
  for (const auto& tree : f.trees) {
    ordered_json nodes = ordered_json::array();
    for (const auto& n : tree.nodes) {
      nodes.push_back({n.feature, n.split, n.left, n.right, n.size});
    }
    trees.push_back(std::move(nodes));
  }
  j["iforest"] = {{"dim", f.dim},
                  {"subsample", f.subsample},
                  {"tree_count", f.tree_count},
                  {"seed", f.seed},
                  {"threshold", f.threshold},
                  {"trees", std::move(trees)}};
  return j;
}

}  // namespace

std::string compute_version(const EtdModelArtifact& a) {
  return format_compact(a.trained_at) + "-" +
         hex16(fnv1a(content_json(a).dump()));
}

EtdModelArtifact train_artifact(std::span<const EtdFeatureRow> rows,
                                const TrainConfig& cfg, Timestamp trained_at) {
  if (rows.empty()) throw TrainingError("no training rows");
  const Matrix raw = to_matrix(rows);
  EtdModelArtifact a;
  a.feature_names = feature_names(raw.cols() == 8);
  GaussianFit fit = fit_gaussian(raw, cfg.quantile, a.feature_names);
  a.forest = build_iforest(fit.normalized, cfg.tree_count, cfg.subsample,
                           cfg.seed);
  a.forest.threshold = cfg.iforest_threshold;
  a.stats = std::move(fit.stats);
  a.gaussian = std::move(fit.model);
  a.trained_at = trained_at;
  a.training_window_days = cfg.window_days;
  a.seed = cfg.seed;
  a.geo_impute = a.stats.mean[5];
  a.training_rows = rows.size();
  a.version = compute_version(a);
  return a;
}

std::string artifact_to_json(const EtdModelArtifact& a) {
  ordered_json j;
  j["version"] = a.version;
  ordered_json content = content_json(a);
  for (auto& [k, v] : content.items()) j[k] = std::move(v);
  return j.dump();
}

EtdModelArtifact artifact_from_json(std::string_view text) {
  EtdModelArtifact a;
  try {
    const auto j = ordered_json::parse(text);
    a.version = j.at("version").get<std::string>();
    a.trained_at = parse_iso8601(j.at("trained_at").get<std::string>());
    a.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    a.training_window_days = j.at("training_window_days").get<int>();
    a.training_rows = j.at("training_rows").get<std::size_t>();
    a.seed = j.at("seed").get<std::uint64_t>();
    a.geo_impute = j.at("geo_impute").get<double>();

    const auto& s = j.at("stats");
    a.stats.mean = s.at("mean").get<std::vector<double>>();
    a.stats.stddev = s.at("std").get<std::vector<double>>();
    a.stats.kept = s.at("kept").get<std::vector<std::size_t>>();
    a.stats.dropped = s.at("dropped").get<std::vector<std::size_t>>();

    const auto& g = j.at("gaussian");
    a.gaussian.dim = g.at("dim").get<std::size_t>();
    a.gaussian.mean = g.at("mean").get<std::vector<double>>();
    a.gaussian.covariance = matrix_from(g.at("covariance"), a.gaussian.dim);
    a.gaussian.lambda = g.at("lambda").get<double>();
    a.gaussian.tau = g.at("tau").get<double>();
    a.gaussian.quantile = g.at("quantile").get<double>();

    const auto& f = j.at("iforest");
    a.forest.dim = f.at("dim").get<std::size_t>();
    a.forest.subsample = f.at("subsample").get<std::size_t>();
    a.forest.tree_count = f.at("tree_count").get<std::size_t>();
    a.forest.seed = f.at("seed").get<std::uint64_t>();
    a.forest.threshold = f.at("threshold").get<double>();
    for (const auto& tj : f.at("trees")) {
      IsolationTree tree;
      for (const auto& nj : tj) {
        tree.nodes.push_back(IsolationNode{
            nj.at(0).get<int>(), nj.at(1).get<double>(), nj.at(2).get<int>(),
            nj.at(3).get<int>(), nj.at(4).get<int>()});
      }
      a.forest.trees.push_back(std::move(tree));
    }
  } catch (const nlohmann::json::exception& e) {
    throw CorruptArtifactError(std::string("unreadable artifact: ") + e.what());
  } catch (const ParseError& e) {
    throw CorruptArtifactError(std::string("unreadable artifact: ") + e.what());
  }

  if (compute_version(a) != a.version) {
    throw CorruptArtifactError("artifact content does not match version " +
                               a.version);
  }
  const std::size_t d = a.gaussian.dim;
  if (a.stats.kept.size() != d || a.gaussian.mean.size() != d ||
      a.forest.dim != d || a.stats.mean.size() != a.feature_names.size()) {
    throw CorruptArtifactError("artifact dimensions are inconsistent");
  }
  for (const auto& tree : a.forest.trees) {
    const auto n = static_cast<int>(tree.nodes.size());
    if (n == 0) throw CorruptArtifactError("empty isolation tree");
    for (const auto& node : tree.nodes) {
      if (!node.is_leaf() &&
          (node.feature >= static_cast<int>(d) || node.left <= 0 ||
           node.right <= 0 || node.left >= n || node.right >= n)) {
        throw CorruptArtifactError("isolation tree has dangling children");
      }
    }
  }
  try {
    finalize(a.gaussian);
  } catch (const TrainingError& e) {
    throw CorruptArtifactError(e.what());
  }
  return a;
}

namespace {

void check_row(const EtdModelArtifact& a, const EtdFeatureRow& row,
               std::vector<double>& raw) {
  raw = {row.hour, row.ip_numeric,      row.status,
         row.failed_attempts, row.freq, row.geo_distance};
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (std::isnan(raw[i])) {
      throw ScoringError("missing mandatory feature " +
                         std::string(kFeatureNames[i]));
    }
  }
  if (a.feature_names.size() == 8) {
    if (!row.repo_event_count || !row.url_risk) {
      throw ScoringError(
          "model expects repo_event_count and url_risk features");
    }
    raw.push_back(*row.repo_event_count);
    raw.push_back(*row.url_risk);
  }
}

}  // namespace

ScoreResult score_event(const EtdModelArtifact& a, const EtdFeatureRow& row) {
  std::vector<double> raw;
  check_row(a, row, raw);
  const std::vector<double> x = a.stats.normalize(raw);
  ScoreResult r;
  r.mahalanobis = mahalanobis_score(a.gaussian, x);
  r.iforest = iforest_score(a.forest, x);
  r.model_version = a.version;
  if (r.mahalanobis > a.gaussian.tau) {
    r.anomalous = true;
    r.detector = Detector::kMahalanobis;
  } else if (r.iforest > a.forest.threshold) {
    r.anomalous = true;
    r.detector = Detector::kIsolationForest;
  }
  return r;
}

double triggering_score(const ScoreResult& r) {
  return r.anomalous && r.detector == Detector::kIsolationForest
             ? r.iforest
             : r.mahalanobis;
}

std::vector<ScoreResult> score_batch(const EtdModelArtifact& a,
                                     std::span<const EtdFeatureRow> rows) {
  std::vector<ScoreResult> out(rows.size());
  const auto n = static_cast<std::ptrdiff_t>(rows.size());
  // Exceptions must not escape an OpenMP region; rethrown afterwards.
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] =
          score_event(a, rows[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(sentinel_score_batch)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

namespace reference {
std::vector<ScoreResult> score_batch_serial(
    const EtdModelArtifact& a, std::span<const EtdFeatureRow> rows) {
  std::vector<ScoreResult> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(score_event(a, row));
  return out;
}
}  // namespace reference

SecurityEvent make_threat_event(const EtdModelArtifact& a,
                                const EtdFeatureRow& row,
                                const ScoreResult& r, Timestamp when) {
  const double ipv = std::clamp(row.ip_numeric, 0.0, 4294967295.0);
  return SecurityEvent{
      when, EmergentThreat{numeric_to_ip(static_cast<std::uint32_t>(ipv)),
                           triggering_score(r), row, r.detector, a.version}};
}

std::vector<SecurityEvent> detect_stream(const EtdModelArtifact& a,
                                         std::span<const EtdFeatureRow> rows,
                                         std::span<const Timestamp> times,
                                         Timestamp now) {
  const auto scores = score_batch(a, rows);
  std::vector<SecurityEvent> events;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!scores[i].anomalous) continue;
    events.push_back(make_threat_event(
        a, rows[i], scores[i], times.empty() ? now : times[i]));
  }
  return events;
}

}  // namespace sentinel::etd
