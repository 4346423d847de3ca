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
#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include <gtest/gtest.h>

#include "sentinel/core/errors.hpp"
#include "sentinel/harness/generators.hpp"
#include "sentinel/retrain/registry.hpp"
#include "sentinel/retrain/retrain.hpp"
#include "sentinel/retrain/schedule.hpp"
#include "sentinel/retrain/store.hpp"

namespace sentinel::retrain {
namespace {

namespace fs = std::filesystem;

const Timestamp kT0 = Timestamp::FromCivil(2024, 3, 1, 0, 0, 0);

std::vector<TimedRow> timed(const harness::EtdStream& s) {
  std::vector<TimedRow> out;
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    out.push_back({s.timestamps[i], s.rows[i]});
  }
  return out;
}

harness::EtdStream clean_stream(std::uint64_t seed, std::size_t rows = 5000) {
  harness::Scenario s;
  s.seed = seed;
  s.rows = rows;
  s.anomaly_rate = 0.0;
  return harness::gen_etd_stream(s);
}

RetrainConfig fast_config() {
  RetrainConfig cfg;
  cfg.train.tree_count = 30;
  return cfg;
}

class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = fs::temp_directory_path() /
            ("sentinel_retrain_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

TEST(RetrainConfig, Validation) {
  RetrainConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  EXPECT_NEAR(cfg.flag_rate_bound(), 0.02, 1e-12);
  cfg.holdout_fraction = 1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.holdout_fraction = 0.2;
  cfg.window_days = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg.window_days = 30;
  cfg.schedule = "61 * * * *";
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(SelectWindow, ClosedIntervalAndEmpty) {
  const Timestamp now = kT0 + 30 * 86400;
  std::vector<TimedRow> rows = {{kT0 - 1, {}}, {kT0, {}}, {now, {}},
                                {now + 1, {}}};
  const auto sel = select_window(rows, now, 30);
  ASSERT_EQ(sel.size(), 2u);
  EXPECT_EQ(sel[0].timestamp, kT0);
  EXPECT_EQ(sel[1].timestamp, now);
  EXPECT_THROW(select_window(rows, now + 40 * 86400, 1), ValidationError);
}

TEST(SelectWindow, MatchesLinearFilter) {
  std::mt19937_64 rng(90);
  std::uniform_int_distribution<std::int64_t> when(0, 90 * 86400);
  std::vector<TimedRow> rows;
  for (int i = 0; i < 3000; ++i) {
    TimedRow r{kT0 + when(rng), {}};
    r.row.hour = i;
    rows.push_back(r);
  }
  const Timestamp now = kT0 + 90 * 86400;
  const auto sel = select_window(rows, now, 30);
  std::vector<TimedRow> expect;
  for (const auto& r : rows) {
    if (r.timestamp >= now - 30 * 86400 && r.timestamp <= now) {
      expect.push_back(r);
    }
  }
  std::stable_sort(expect.begin(), expect.end(),
                   [](const TimedRow& a, const TimedRow& b) {
                     return a.timestamp < b.timestamp;
                   });
  EXPECT_EQ(sel, expect);
}

TEST(Retrain, StationaryAccepted) {
  const auto rows = timed(clean_stream(42));
  const auto out = retrain(rows, fast_config(), kT0 + 86400 * 10);
  EXPECT_EQ(out.report.training_rows, 4000u);
  EXPECT_EQ(out.report.holdout_rows, 1000u);
  EXPECT_LE(out.report.holdout_flag_rate, 0.02);
  EXPECT_TRUE(out.report.accepted);
  EXPECT_EQ(out.report.candidate_version, out.candidate.version);
  EXPECT_EQ(out.candidate.training_rows, 4000u);
}

TEST(Retrain, DriftedHoldoutRejected) {
  harness::Scenario s;
  s.seed = 42;
  s.rows = 5000;
  s.anomaly_rate = 0.0;
  s.drift = harness::DriftSpec{4000, {6, 0, 0, 2, 6, 300}};
  const auto out =
      retrain(timed(harness::gen_etd_stream(s)), fast_config(), kT0 + 864000);
  EXPECT_GT(out.report.holdout_flag_rate, 0.02);
  EXPECT_FALSE(out.report.accepted);
}

TEST(Retrain, EmptyHoldoutIsAnError) {
  auto cfg = fast_config();
  cfg.holdout_fraction = 0.01;
  const auto rows = timed(clean_stream(1, 50));
  EXPECT_THROW(retrain(rows, cfg, kT0), ValidationError);
}

TEST(Store, PersistLoadAndCurrent) {
  TempDir dir;
  const auto first = retrain(timed(clean_stream(1, 1500)), fast_config(),
                             kT0 + 1);
  const auto second = retrain(timed(clean_stream(2, 1500)), fast_config(),
                              kT0 + 2);
  EXPECT_FALSE(load_current(dir.path()).has_value());

  const fs::path p1 = persist_artifact(first.candidate, dir.path());
  EXPECT_EQ(p1, artifact_path(dir.path(), first.candidate.version));
  EXPECT_EQ(p1.filename().string(),
            "etd_model_" + first.candidate.version + ".json");
  set_current(dir.path(), first.candidate.version);
  persist_artifact(second.candidate, dir.path());
  set_current(dir.path(), second.candidate.version);
  EXPECT_EQ(read_current(dir.path()), second.candidate.version);

  const auto loaded = load_artifact(p1);
  const auto probes = clean_stream(3, 100).rows;
  for (const auto& row : probes) {
    const auto a = etd::score_event(first.candidate, row);
    const auto b = etd::score_event(loaded, row);
    EXPECT_EQ(a.mahalanobis, b.mahalanobis);
    EXPECT_EQ(a.iforest, b.iforest);
  }
  for (const auto& entry : fs::directory_iterator(dir.path())) {
    EXPECT_EQ(entry.path().string().find(".tmp"), std::string::npos);
  }
}

TEST(Store, CorruptedFileRejected) {
  TempDir dir;
  const auto out = retrain(timed(clean_stream(1, 1500)), fast_config(), kT0);
  const fs::path p = persist_artifact(out.candidate, dir.path());
  std::string text;
  {
    std::ifstream in(p);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  const auto pos = text.find("\"geo_impute\":") + 14;
  text[pos] = text[pos] == '1' ? '2' : '1';
  {
    std::ofstream out_file(p, std::ios::trunc);
    out_file << text;
  }
  EXPECT_THROW(load_artifact(p), CorruptArtifactError);
  EXPECT_THROW(load_artifact(dir.path() / "missing.json"), IoError);
}

TEST(Registry, NoModelAndIdempotentSwap) {
  ModelRegistry reg;
  EXPECT_FALSE(reg.version().has_value());
  EXPECT_THROW(reg.score(EtdFeatureRow{}), NoModelError);
  auto a = std::make_shared<const etd::EtdModelArtifact>(
      retrain(timed(clean_stream(1, 1500)), fast_config(), kT0).candidate);
  EXPECT_TRUE(reg.swap(a));
  EXPECT_FALSE(reg.swap(a));
  EXPECT_EQ(reg.version(), a->version);
}

TEST(Registry, ConcurrentScoresSpanningSwapSeeOldOrNew) {
  auto old_model = std::make_shared<const etd::EtdModelArtifact>(
      retrain(timed(clean_stream(1, 1500)), fast_config(), kT0).candidate);
  auto new_model = std::make_shared<const etd::EtdModelArtifact>(
      retrain(timed(clean_stream(2, 1500)), fast_config(), kT0 + 60).candidate);
  ASSERT_NE(old_model->version, new_model->version);
  ModelRegistry reg;
  reg.swap(old_model);
  const auto probes = clean_stream(5, 250).rows;

  constexpr int kThreads = 8;
  constexpr int kPerThread = 1250;
  std::atomic<int> errors{0}, mixed{0}, started{0}, saw_new{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < kThreads; ++t) {
    pool.emplace_back([&, t] {
      ++started;
      for (int i = 0; i < kPerThread; ++i) {
        const auto& row = probes[static_cast<std::size_t>(i + t) % probes.size()];
        try {
          const auto r = reg.score(row);
          const auto& m =
              r.model_version == old_model->version ? *old_model : *new_model;
          if (r.model_version != old_model->version &&
              r.model_version != new_model->version) {
            ++mixed;
            continue;
          }
          // The scores must come from the model the version names.
          const auto expect = etd::score_event(m, row);
          if (expect.mahalanobis != r.mahalanobis ||
              expect.iforest != r.iforest) {
            ++mixed;
          }
          if (&m == new_model.get()) ++saw_new;
        } catch (...) {
          ++errors;
        }
      }
    });
  }
  while (started < kThreads) std::this_thread::yield();
  reg.swap(new_model);
  for (auto& th : pool) th.join();
  EXPECT_EQ(errors, 0);
  EXPECT_EQ(mixed, 0);
  EXPECT_EQ(reg.version(), new_model->version);
}

TEST(Schedule, CronParsingAndNext) {
  const Schedule weekly = Schedule::Parse("0 3 * * 1");
  // 2024-03-01 is a Friday; next Monday 03:00 is 2024-03-04.
  EXPECT_EQ(weekly.next_after(kT0), Timestamp::FromCivil(2024, 3, 4, 3, 0, 0));
  EXPECT_EQ(weekly.next_after(Timestamp::FromCivil(2024, 3, 4, 3, 0, 0)),
            Timestamp::FromCivil(2024, 3, 11, 3, 0, 0));
  const Schedule steps = Schedule::Parse("*/15 9-10 * * *");
  EXPECT_EQ(steps.next_after(Timestamp::FromCivil(2024, 3, 1, 10, 50, 0)),
            Timestamp::FromCivil(2024, 3, 2, 9, 0, 0));
  // Day-of-month and day-of-week restricted together: either matches.
  const Schedule either = Schedule::Parse("0 0 15 * 0");
  EXPECT_EQ(either.next_after(kT0), Timestamp::FromCivil(2024, 3, 3, 0, 0, 0));
  EXPECT_EQ(Schedule::Parse("@daily").next_after(kT0),
            Timestamp::FromCivil(2024, 3, 2, 0, 0, 0));
  const Schedule every = Schedule::Parse("every 6h");
  EXPECT_TRUE(every.is_interval());
  EXPECT_EQ(every.next_after(kT0), kT0 + 6 * 3600);
}

TEST(Schedule, MalformedSpecs) {
  for (const char* bad : {"61 * * * *", "* * *", "0 25 * * *", "0 0 0 * *",
                          "0 0 * 13 *", "0 0 * * 8", "every", "every 0h",
                          "every 5x", "*/0 * * * *", "5-2 * * * *", ""}) {
    EXPECT_THROW(Schedule::Parse(bad), ConfigError) << bad;
  }
}

TEST(RetrainTrigger, WeeklyOverThreeWeeks) {
  RetrainTrigger trig(Schedule::Parse("0 3 * * 1"), kT0);
  int fired = 0;
  for (Timestamp t = kT0; t < kT0 + 21 * 86400; t = t + 60) {
    if (trig.poll(t)) ++fired;
  }
  EXPECT_EQ(fired, 3);
}

TEST(RetrainTrigger, MissedTicksCoalesce) {
  RetrainTrigger trig(Schedule::Parse("0 3 * * 1"), kT0);
  EXPECT_FALSE(trig.poll(kT0 + 3600));
  // Asleep across two Mondays.
  EXPECT_TRUE(trig.poll(kT0 + 12 * 86400));
  EXPECT_FALSE(trig.poll(kT0 + 12 * 86400 + 60));
  EXPECT_EQ(trig.fired(), 1u);
  EXPECT_EQ(trig.next_due(), Timestamp::FromCivil(2024, 3, 18, 3, 0, 0));
}

}  // namespace
}  // namespace sentinel::retrain
