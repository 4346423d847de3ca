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

#include "sentinel/harness/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sentinel/core/errors.hpp"

namespace sentinel::harness {
namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

template <class T>
void take(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

}  // namespace

void Scenario::validate() const {
  auto fail = [](const std::string& m) { throw ValidationError("scenario: " + m); };
  if (duration_hours < 0) fail("duration_hours must be >= 0");
  if (normal_login_rate < 0) fail("normal_login_rate must be >= 0");
  if (normal_failure_fraction < 0 || normal_failure_fraction > 1) {
    fail("normal_failure_fraction must be in [0, 1]");
  }
  if (anomaly_rate < 0 || anomaly_rate >= 1) fail("anomaly_rate must be in [0, 1)");
  if (phishing_rate < 0 || phishing_rate > 1) fail("phishing_rate must be in [0, 1]");
  if (anomaly_shift < 4.0) fail("anomaly_shift must be >= 4");
  if (row_spacing_secs <= 0) fail("row_spacing_secs must be > 0");
  if (bf_threshold < 1) fail("bf_threshold must be >= 1");
  if (bf_window_secs <= 0) fail("bf_window_secs must be > 0");
  for (const auto& b : attacker_bursts) {
    if (b.count < 0) fail("burst count must be >= 0");
    if (b.spacing_secs < 0) fail("burst spacing_secs must be >= 0");
    if (b.start_secs < 0) fail("burst start_secs must be >= 0");
  }
}

Scenario parse_scenario(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("scenario: expected a JSON object");
  static const std::set<std::string> kKnown = {
      "seed", "duration_hours", "normal_login_rate", "normal_failure_fraction",
      "attacker_bursts", "anomaly_rate", "rows", "row_spacing_secs",
      "anomaly_shift", "drift", "url_count", "phishing_rate", "start",
      "bf_threshold", "bf_window_secs"};
  for (const auto& [key, _] : j.items()) {
    if (!kKnown.contains(key)) throw ParseError("scenario: unknown key '" + key + "'");
  }
  Scenario s;
  try {
    take(j, "seed", s.seed);
    take(j, "duration_hours", s.duration_hours);
    take(j, "normal_login_rate", s.normal_login_rate);
    take(j, "normal_failure_fraction", s.normal_failure_fraction);
    take(j, "anomaly_rate", s.anomaly_rate);
    take(j, "rows", s.rows);
    take(j, "row_spacing_secs", s.row_spacing_secs);
    take(j, "anomaly_shift", s.anomaly_shift);
    take(j, "url_count", s.url_count);
    take(j, "phishing_rate", s.phishing_rate);
    take(j, "bf_threshold", s.bf_threshold);
    take(j, "bf_window_secs", s.bf_window_secs);
    if (j.contains("start")) s.start = parse_iso8601(j["start"].get<std::string>());
    if (j.contains("attacker_bursts")) {
      for (const auto& b : j["attacker_bursts"]) {
        AttackerBurst burst;
        burst.ip = parse_ip(b.at("ip").get<std::string>());
        take(b, "start_secs", burst.start_secs);
        take(b, "count", burst.count);
        take(b, "spacing_secs", burst.spacing_secs);
        s.attacker_bursts.push_back(burst);
      }
    }
    if (j.contains("drift") && !j["drift"].is_null()) {
      DriftSpec d;
      take(j["drift"], "after_row", d.after_row);
      auto shift = j["drift"].at("shift").get<std::vector<double>>();
      if (shift.size() != 6) throw ParseError("scenario: drift.shift needs 6 values");
      std::copy(shift.begin(), shift.end(), d.shift.begin());
      s.drift = d;
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::string scenario_to_json(const Scenario& s) {
  ojson j;
  j["seed"] = s.seed;
  j["duration_hours"] = s.duration_hours;
  j["normal_login_rate"] = s.normal_login_rate;
  j["normal_failure_fraction"] = s.normal_failure_fraction;
  j["attacker_bursts"] = ojson::array();
  for (const auto& b : s.attacker_bursts) {
    j["attacker_bursts"].push_back({{"ip", to_string(b.ip)},
                                    {"start_secs", b.start_secs},
                                    {"count", b.count},
                                    {"spacing_secs", b.spacing_secs}});
  }
  j["anomaly_rate"] = s.anomaly_rate;
  j["rows"] = s.rows;
  j["row_spacing_secs"] = s.row_spacing_secs;
  j["anomaly_shift"] = s.anomaly_shift;
  if (s.drift) {
    j["drift"] = {{"after_row", s.drift->after_row},
                  {"shift", std::vector<double>(s.drift->shift.begin(),
                                                s.drift->shift.end())}};
  }
  j["url_count"] = s.url_count;
  j["phishing_rate"] = s.phishing_rate;
  j["start"] = format_iso8601(s.start);
  j["bf_threshold"] = s.bf_threshold;
  j["bf_window_secs"] = s.bf_window_secs;
  return j.dump(2);
}

}  // namespace sentinel::harness
