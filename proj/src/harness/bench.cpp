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

#include "sentinel/harness/bench.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <thread>

#include "sentinel/core/errors.hpp"
#include "sentinel/etd/artifact.hpp"
#include "sentinel/harness/generators.hpp"
#include "sentinel/phishing/detector.hpp"
#include "sentinel/ssh/brute_force.hpp"
#include "sentinel/ssh/parser.hpp"

namespace sentinel::harness {
namespace {

using Clock = std::chrono::steady_clock;

// Worker-local state factory: returns the per-item function for a worker.
using ItemFn = std::function<void(std::size_t)>;
using WorkerFactory = std::function<ItemFn()>;

EvalReport time_items(std::size_t n, int workers, const WorkerFactory& make) {
  workers = std::max(1, workers);
  const auto nw = static_cast<std::size_t>(workers);
  std::vector<std::vector<double>> latencies(nw);
  std::vector<Clock::time_point> begin(nw), end(nw);
  auto body = [&](std::size_t w) {
    ItemFn fn = make();
    std::size_t lo = n * w / nw;
    std::size_t hi = n * (w + 1) / nw;
    for (std::size_t i = 0; i < (n / 10) / nw; ++i) fn(n + lo + i);
    auto& lat = latencies[w];
    lat.reserve(hi - lo);
    begin[w] = Clock::now();
    for (std::size_t i = lo; i < hi; ++i) {
      auto t0 = Clock::now();
      fn(i);
      lat.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    }
    end[w] = Clock::now();
  };
  if (nw == 1) {
    body(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < nw; ++w) pool.emplace_back(body, w);
  }

  std::vector<double> all;
  all.reserve(n);
  for (const auto& lat : latencies) all.insert(all.end(), lat.begin(), lat.end());
  std::sort(all.begin(), all.end());
  double wall = std::chrono::duration<double>(
                    *std::max_element(end.begin(), end.end()) -
                    *std::min_element(begin.begin(), begin.end()))
                    .count();
  EvalReport r;
  r.items = n;
  r.throughput = static_cast<double>(n) / std::max(wall, 1e-9);
  r.latency_p50_ms = percentile(all, 0.50);
  r.latency_p99_ms = percentile(all, 0.99);
  r.latency_max_ms = all.back();
  return r;
}

}  // namespace

BenchTarget parse_bench_target(std::string_view name) {
  if (name == "ssh_parse") return BenchTarget::kSshParse;
  if (name == "phish_eval") return BenchTarget::kPhishEval;
  if (name == "etd_score") return BenchTarget::kEtdScore;
  throw ValidationError("unknown bench target '" + std::string(name) +
                        "' (expected ssh_parse, phish_eval or etd_score)");
}

std::string_view to_string(BenchTarget t) {
  switch (t) {
    case BenchTarget::kSshParse: return "ssh_parse";
    case BenchTarget::kPhishEval: return "phish_eval";
    case BenchTarget::kEtdScore: return "etd_score";
  }
  return "unknown";
}

EvalReport run_bench(BenchTarget target, const BenchOptions& opts) {
  if (opts.n == 0) throw ValidationError("bench: n must be > 0");
  const std::size_t total = opts.n + opts.n / 10 + 1;

  switch (target) {
    case BenchTarget::kSshParse: {
      Scenario s;
      s.seed = opts.seed;
      s.normal_login_rate = 3600.0;
      s.normal_failure_fraction = 0.5;
      s.duration_hours = static_cast<double>(total) / 3600.0 + 1.0;
      s.attacker_bursts.push_back({parse_ip("203.0.113.7"), 60, 2000, 1});
      auto logs = gen_ssh_logs(s);
      const int year = 2024;
      return time_items(opts.n, opts.workers, [&]() -> ItemFn {
        auto det = std::make_shared<ssh::BruteForceDetector>(ssh::BruteForceConfig{});
        return [det, &logs, year](std::size_t i) {
          const auto& line = logs.lines[i % logs.lines.size()];
          if (auto rec = ssh::parse_ssh_line(line, year)) det->ingest(*rec);
        };
      });
    }
    case BenchTarget::kPhishEval: {
      auto domains = gen_blacklist_domains(opts.blacklist_size, opts.seed);
      phishing::PhishDetector det(phishing::PhishConfig{}, phishing::Blacklist(domains));
      Scenario s;
      s.seed = opts.seed;
      s.url_count = std::min<std::size_t>(total, 50'000);
      auto urls = gen_urls(s);
      for (std::size_t i = 0; i < urls.size(); i += 7) {
        urls[i].url = "http://" + domains[i % domains.size()] + "/x";
      }
      Timestamp now = Timestamp::FromCivil(2024, 3, 1);
      return time_items(opts.n, opts.workers, [&]() -> ItemFn {
        return [&det, &urls, now](std::size_t i) {
          (void)det.evaluate(urls[i % urls.size()].url, now);
        };
      });
    }
    case BenchTarget::kEtdScore: {
      Scenario train;
      train.seed = opts.seed;
      train.rows = 5000;
      train.anomaly_rate = 0.0;
      auto a = etd::train_artifact(gen_etd_stream(train).rows, etd::TrainConfig{},
                                   Timestamp::FromCivil(2024, 3, 1));
      Scenario test = train;
      test.seed = opts.seed + 1;
      test.rows = std::min<std::size_t>(total, 50'000);
      test.anomaly_rate = 0.02;
      auto rows = gen_etd_stream(test).rows;
      return time_items(opts.n, opts.workers, [&]() -> ItemFn {
        return [&a, &rows](std::size_t i) {
          (void)etd::score_event(a, rows[i % rows.size()]);
        };
      });
    }
  }
  throw ValidationError("unknown bench target");
}

}  // namespace sentinel::harness
