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
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "sentinel/core/errors.hpp"
#include "sentinel/core/ip.hpp"
#include "sentinel/harness/bench.hpp"
#include "sentinel/harness/eval.hpp"
#include "sentinel/harness/generators.hpp"
#include "sentinel/harness/scenario.hpp"
#include "sentinel/ssh/parser.hpp"

namespace sentinel::harness {
namespace {

std::vector<ssh::SshAuthRecord> parse_all(const std::vector<std::string>& lines,
                                          int year) {
  std::vector<ssh::SshAuthRecord> out;
  for (const auto& l : lines) {
    if (auto r = ssh::parse_ssh_line(l, year)) out.push_back(*r);
  }
  return out;
}

Scenario attack_scenario(std::uint64_t seed) {
  Scenario s;
  s.seed = seed;
  s.duration_hours = 6;
  s.normal_login_rate = 400;
  s.normal_failure_fraction = 0.3;
  s.attacker_bursts = {
      {parse_ip("203.0.113.5"), 600, 12, 3},
      {parse_ip("203.0.113.6"), 7200, 5, 80},    // spread too thin
      {parse_ip("203.0.113.7"), 14000, 5, 60}};  // exactly at the edge
  return s;
}

TEST(Scenario, JsonRoundTripAndValidation) {
  const Scenario s = attack_scenario(7);
  const Scenario back = parse_scenario(scenario_to_json(s));
  EXPECT_EQ(scenario_to_json(back), scenario_to_json(s));
  EXPECT_EQ(back.attacker_bursts.size(), 3u);

  EXPECT_THROW(parse_scenario(R"({"seed": 1, "colour": "red"})"), ParseError);
  EXPECT_THROW(parse_scenario("{not json"), ParseError);
  EXPECT_THROW(parse_scenario(R"({"anomaly_shift": 3})"), ValidationError);
  EXPECT_THROW(parse_scenario(R"({"anomaly_rate": 1.0})"), ValidationError);
  const Scenario d = parse_scenario(
      R"({"seed": 9, "drift": {"after_row": 10, "shift": [1,2,3,4,5,6]}})");
  ASSERT_TRUE(d.drift.has_value());
  EXPECT_EQ(d.drift->shift[5], 6.0);
}

TEST(GenSsh, ZeroRatesGiveNothing) {
  Scenario s;
  s.normal_login_rate = 0;
  const SshLogs logs = gen_ssh_logs(s);
  EXPECT_TRUE(logs.lines.empty());
  EXPECT_TRUE(logs.brute_force_ips.empty());
}

TEST(GenSsh, BurstOfTenFailures) {
  Scenario s;
  s.normal_login_rate = 0;
  s.attacker_bursts = {{parse_ip("198.51.100.9"), 100, 10, 2}};
  const SshLogs logs = gen_ssh_logs(s);
  ASSERT_EQ(logs.lines.size(), 10u);
  for (const auto& l : logs.lines) {
    EXPECT_NE(l.find("Failed password"), std::string::npos);
    EXPECT_NE(l.find("198.51.100.9"), std::string::npos);
  }
  EXPECT_EQ(logs.brute_force_ips, std::vector<IpAddress>{parse_ip("198.51.100.9")});
}

TEST(GenSsh, Deterministic) {
  const SshLogs a = gen_ssh_logs(attack_scenario(42));
  const SshLogs b = gen_ssh_logs(attack_scenario(42));
  const SshLogs c = gen_ssh_logs(attack_scenario(43));
  EXPECT_EQ(a.lines, b.lines);
  EXPECT_NE(a.lines, c.lines);
}

TEST(GenSsh, LabelsMatchWindowOracle) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Scenario s = attack_scenario(seed);
    const SshLogs logs = gen_ssh_logs(s);
    const auto records = parse_all(logs.lines, 2024);
    ASSERT_EQ(records.size(), logs.lines.size());
    ASSERT_TRUE(std::is_sorted(records.begin(), records.end(),
                               [](const auto& x, const auto& y) {
                                 return x.timestamp < y.timestamp;
                               }));
    auto expect =
        oracle::window_offenders(records, s.bf_threshold, s.bf_window_secs);
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(logs.brute_force_ips, expect) << "seed " << seed;
    EXPECT_TRUE(std::binary_search(logs.brute_force_ips.begin(),
                                   logs.brute_force_ips.end(),
                                   parse_ip("203.0.113.5")));
    EXPECT_FALSE(std::binary_search(logs.brute_force_ips.begin(),
                                    logs.brute_force_ips.end(),
                                    parse_ip("203.0.113.6")));
  }
}

TEST(GenEtd, ZeroRateAllNormal) {
  Scenario s;
  s.anomaly_rate = 0.0;
  s.rows = 500;
  const EtdStream st = gen_etd_stream(s);
  EXPECT_EQ(std::count(st.labels.begin(), st.labels.end(), true), 0);
  EXPECT_EQ(st.rows.size(), 500u);
  EXPECT_EQ(st.timestamps[1] - st.timestamps[0], s.row_spacing_secs);
}

TEST(GenEtd, LabelCountReplaysSeededDraw) {
  Scenario s;
  s.rows = 1000;
  s.anomaly_rate = 0.02;
  s.seed = 42;
  // Draw order per row: one uniform, six normals, and six more for the
  // direction of an anomaly.
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::size_t expected = 0;
  for (int i = 0; i < 1000; ++i) {
    const bool anomaly = u01(rng) < 0.02;
    for (int k = 0; k < (anomaly ? 12 : 6); ++k) normal(rng);
    expected += anomaly ? 1 : 0;
  }
  const EtdStream st = gen_etd_stream(s);
  EXPECT_EQ(static_cast<std::size_t>(
                std::count(st.labels.begin(), st.labels.end(), true)),
            expected);
  EXPECT_EQ(gen_etd_stream(s).rows, st.rows);
}

TEST(GenEtd, NormalRowsFollowBaseline) {
  Scenario s;
  s.rows = 20000;
  s.anomaly_rate = 0.0;
  const EtdStream st = gen_etd_stream(s);
  etd::Matrix m(st.rows.size(), 6);
  for (std::size_t i = 0; i < st.rows.size(); ++i) {
    const auto v = to_vector(st.rows[i]);
    for (std::size_t j = 0; j < 6; ++j) m(i, j) = v[j];
  }
  const auto means = oracle::column_means(m);
  const etd::Matrix cov = oracle::two_pass_covariance(m);
  const etd::Matrix& base = etd_baseline_covariance();
  for (std::size_t j = 0; j < 6; ++j) {
    const double sd = std::sqrt(base(j, j));
    EXPECT_NEAR(means[j], etd_baseline_mean()[j], 5 * sd / std::sqrt(20000.0));
    EXPECT_NEAR(std::sqrt(cov(j, j)) / sd, 1.0, 0.05);
  }
}

TEST(GenEtd, DriftShiftsMean) {
  Scenario s;
  s.rows = 20000;
  s.anomaly_rate = 0.0;
  s.drift = DriftSpec{10000, {3, 0, 0, 0, 6, 500}};
  const EtdStream st = gen_etd_stream(s);
  const etd::Matrix& base = etd_baseline_covariance();
  std::array<double, 6> before{}, after{};
  for (std::size_t i = 0; i < st.rows.size(); ++i) {
    const auto v = to_vector(st.rows[i]);
    auto& acc = i < 10000 ? before : after;
    for (std::size_t j = 0; j < 6; ++j) acc[j] += v[j] / 10000.0;
  }
  for (std::size_t j = 0; j < 6; ++j) {
    // Two independent sample means: 5 standard errors of their difference.
    const double tol = 5 * std::sqrt(2 * base(j, j) / 10000.0);
    EXPECT_NEAR(after[j] - before[j], s.drift->shift[j], tol) << "column " << j;
  }
}

TEST(GenUrls, DeterministicAndLabelled) {
  Scenario s;
  s.url_count = 400;
  const auto a = gen_urls(s);
  const auto b = gen_urls(s);
  ASSERT_EQ(a.size(), 400u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].url, b[i].url);
    EXPECT_EQ(a[i].phishing, b[i].phishing);
  }
  const auto phish = std::count_if(a.begin(), a.end(),
                                   [](const UrlSample& u) { return u.phishing; });
  EXPECT_GT(phish, 40);
  EXPECT_LT(phish, 120);
  const auto domains = gen_blacklist_domains(1000, 1);
  EXPECT_EQ(std::set<std::string>(domains.begin(), domains.end()).size(), 1000u);
}

TEST(Evaluate, Formulas) {
  std::vector<bool> det, lab;
  auto add = [&](int n, bool d, bool l) {
    for (int i = 0; i < n; ++i) {
      det.push_back(d);
      lab.push_back(l);
    }
  };
  add(48, true, true);
  add(10, true, false);
  add(2, false, true);
  add(940, false, false);
  const EvalReport r = evaluate(det, lab);
  EXPECT_EQ(r.true_positives, 48u);
  EXPECT_EQ(r.false_positives, 10u);
  EXPECT_EQ(r.false_negatives, 2u);
  EXPECT_EQ(r.true_negatives, 940u);
  const double p = 48.0 / 58.0;
  EXPECT_DOUBLE_EQ(*r.precision, p);
  EXPECT_DOUBLE_EQ(*r.recall, 0.96);
  EXPECT_NEAR(*r.f1, 2 * p * 0.96 / (p + 0.96), 1e-12);
  EXPECT_DOUBLE_EQ(*r.false_positive_rate, 10.0 / 950.0);
  const auto j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j["true_positives"], 48);
}

TEST(Evaluate, UndefinedRatiosAbsent) {
  const EvalReport r = evaluate(std::vector<bool>(5, false),
                                std::vector<bool>(5, false));
  EXPECT_FALSE(r.precision.has_value());
  EXPECT_FALSE(r.recall.has_value());
  EXPECT_FALSE(r.f1.has_value());
  const auto j = nlohmann::json::parse(r.to_json());
  EXPECT_FALSE(j.contains("precision"));
  EXPECT_THROW(evaluate(std::vector<bool>(3), std::vector<bool>(4)),
               ValidationError);
}

TEST(Evaluate, IdentityAndKeySets) {
  const std::vector<bool> v = {true, false, true, true};
  const EvalReport r = evaluate(v, v);
  EXPECT_EQ(*r.precision, 1.0);
  EXPECT_EQ(*r.recall, 1.0);
  EXPECT_EQ(*r.f1, 1.0);

  const EvalReport k =
      evaluate(std::set<std::string>{"a", "b", "x"},
               std::set<std::string>{"a", "b", "c", "d"});
  EXPECT_EQ(k.true_positives, 2u);
  EXPECT_EQ(k.false_positives, 1u);
  EXPECT_EQ(k.false_negatives, 2u);
}

TEST(Evaluate, F1IsHarmonicMeanOnRandomCounts) {
  std::mt19937_64 rng(3);
  std::bernoulli_distribution coin(0.5);
  for (int t = 0; t < 200; ++t) {
    std::vector<bool> d(50), l(50);
    for (std::size_t i = 0; i < 50; ++i) {
      d[i] = coin(rng);
      l[i] = coin(rng);
    }
    const EvalReport r = evaluate(d, l);
    if (!r.precision || !r.recall || *r.precision + *r.recall == 0) continue;
    EXPECT_NEAR(*r.f1,
                2 * *r.precision * *r.recall / (*r.precision + *r.recall),
                1e-12);
    EXPECT_LE(*r.f1, std::max(*r.precision, *r.recall));
  }
}

TEST(Percentile, NearestRank) {
  const std::vector<double> v = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  EXPECT_EQ(percentile(v, 0.5), 5);
  EXPECT_EQ(percentile(v, 0.99), 10);
  EXPECT_EQ(percentile(v, 0.1), 1);
  EXPECT_EQ(percentile(v, 1.0), 10);
}

TEST(Bench, SmallRunsReportOrderedLatencies) {
  for (const char* name : {"ssh_parse", "phish_eval", "etd_score"}) {
    BenchOptions o;
    o.n = 2000;
    o.blacklist_size = 1000;
    const EvalReport r = run_bench(parse_bench_target(name), o);
    EXPECT_EQ(r.items, 2000u) << name;
    ASSERT_TRUE(r.throughput && r.latency_p50_ms && r.latency_p99_ms &&
                r.latency_max_ms);
    EXPECT_GT(*r.throughput, 0.0);
    EXPECT_LE(*r.latency_p50_ms, *r.latency_p99_ms);
    EXPECT_LE(*r.latency_p99_ms, *r.latency_max_ms);
    EXPECT_FALSE(r.precision.has_value());
  }
  EXPECT_THROW(parse_bench_target("gpu"), ValidationError);
}

}  // namespace
}  // namespace sentinel::harness
