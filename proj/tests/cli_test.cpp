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

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

struct CliResult {
  std::string out;
  int status = -1;
  json last() const {
    std::string line, l;
    for (std::istringstream in(out); std::getline(in, l);) {
      if (!l.empty()) line = l;
    }
    return json::parse(line);
  }
};

CliResult cli(const std::string& args) {
  const std::string cmd = std::string(SENTINEL_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), pipe)) r.out += buf;
  const int status = ::pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sentinel_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }

  fs::path dir_;
};

TEST_F(CliTest, ScoreUrlHeuristicAndBlacklist) {
  auto h = cli("score-url http://secure-updates-login.com");
  ASSERT_EQ(h.status, 0);
  EXPECT_EQ(h.last()["score"], 85);
  EXPECT_EQ(h.last()["detection_method"], "HeuristicAnalysis");
  EXPECT_EQ(h.last()["flagged"], true);

  write("bl.txt", "# test list\nfake-bank-login.com\n");
  auto b = cli("score-url http://login.fake-bank-login.com/x --blacklist " + path("bl.txt"));
  ASSERT_EQ(b.status, 0);
  EXPECT_EQ(b.last()["score"], 100);
  EXPECT_EQ(b.last()["detection_method"], "Blacklist");

  auto bad = cli("score-url 'not a url'");
  EXPECT_NE(bad.status, 0);
}

TEST_F(CliTest, ParseReportsBruteForce) {
  std::string log;
  for (int s = 52; s < 60; ++s) {
    log += "Feb 12 15:22:" + std::to_string(s) +
           " host1 sshd[1]: Failed password for root from 192.168.1.12 port 22 ssh2\n";
  }
  log += "Feb 12 15:23:00 host1 sshd[1]: Failed password for root from 192.168.1.12 port 22 ssh2\n";
  log += "Feb 12 15:23:01 host1 sshd[1]: Failed password for root from 192.168.1.12 port 22 ssh2\n";
  log += "Feb 12 15:23:02 host1 CRON[7]: session opened\n";
  write("auth.log", log);
  auto r = cli("parse " + path("auth.log") + " --year 2025");
  ASSERT_EQ(r.status, 0);
  const json j = r.last();
  EXPECT_EQ(j["records"], 10);
  EXPECT_EQ(j["skipped"], 1);
  ASSERT_EQ(j["events"].size(), 1u);
  EXPECT_EQ(j["events"][0]["failed_attempts"], 10);
  EXPECT_EQ(j["events"][0]["ip"], "192.168.1.12");
}

TEST_F(CliTest, GenParseEvalRoundTrip) {
  write("scenario.json",
        R"({"seed": 7, "duration_hours": 2, "normal_login_rate": 120,
            "attacker_bursts": [{"ip": "203.0.113.9", "start_secs": 600,
                                 "count": 20, "spacing_secs": 3}]})");
  auto g = cli("gen ssh --scenario " + path("scenario.json") + " --log-out " +
               path("auth.log") + " --labels-out " + path("labels.json"));
  ASSERT_EQ(g.status, 0);
  auto p = cli("parse " + path("auth.log") + " --year 2024");
  ASSERT_EQ(p.status, 0);
  const json parsed = p.last();
  ASSERT_FALSE(parsed["events"].empty());
  std::ofstream det(dir_ / "det.ndjson");
  for (const auto& e : parsed["events"]) det << e.dump() << '\n';
  det.close();
  auto e = cli("eval --detections " + path("det.ndjson") + " --labels " + path("labels.json"));
  ASSERT_EQ(e.status, 0);
  EXPECT_EQ(e.last()["precision"], 1.0);
  EXPECT_EQ(e.last()["recall"], 1.0);
}

TEST_F(CliTest, TrainThenValidateAndDetectTampering) {
  write("s.json", R"({"seed": 3, "rows": 800, "anomaly_rate": 0})");
  auto g = cli("gen etd --scenario " + path("s.json") + " --csv-out " + path("rows.csv"));
  ASSERT_EQ(g.status, 0);
  auto t = cli("train --data " + path("rows.csv") + " --model-dir " + path("models"));
  ASSERT_EQ(t.status, 0);
  const std::string model = t.last()["path"];
  auto v = cli("validate --model " + model);
  EXPECT_EQ(v.status, 0);
  EXPECT_EQ(v.last()["valid"], true);
  EXPECT_EQ(v.last()["version"], t.last()["version"]);

  std::string text;
  {
    std::ifstream in(model);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  const auto pos = text.find("\"tau\":");
  ASSERT_NE(pos, std::string::npos);
  text.insert(pos + 6, "1");
  std::ofstream(model, std::ios::trunc) << text;
  auto bad = cli("validate --model " + model);
  EXPECT_EQ(bad.status, 1);
  EXPECT_EQ(bad.last()["valid"], false);
}

TEST_F(CliTest, RunWithBadConfigExitsOne) {
  write("bad.conf", "sink.0.kind = carrier-pigeon\n");
  EXPECT_EQ(cli("run --config " + path("bad.conf")).status, 1);
  write("broken.conf", "ssh.threshold\n");
  EXPECT_EQ(cli("run --config " + path("broken.conf")).status, 1);
  write("nosink.conf", "ssh.threshold = 5\n");
  EXPECT_EQ(cli("run --config " + path("nosink.conf")).status, 1);
  EXPECT_EQ(cli("run --config " + path("missing.conf")).status, 1);
}

}  // namespace
