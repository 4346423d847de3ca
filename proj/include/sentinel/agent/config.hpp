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

#ifndef SENTINEL_AGENT_CONFIG_HPP_
#define SENTINEL_AGENT_CONFIG_HPP_

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sentinel/etd/features.hpp"
#include "sentinel/etd/geo.hpp"
#include "sentinel/phishing/detector.hpp"
#include "sentinel/retrain/retrain.hpp"
#include "sentinel/ssh/brute_force.hpp"

namespace sentinel::agent {

enum class SinkKind { kStdout, kFile, kWebhook };

struct SinkConfig {
  SinkKind kind = SinkKind::kStdout;
  std::string target;  // file path or http(s) URL
  std::chrono::milliseconds timeout{5000};
  int retry = 2;
};

struct MitigationPolicy {
  bool enabled = false;  // false = dry run
  std::string command_template = "ufw deny from {ip} to any";

  // Throws ConfigError unless the template holds exactly one {ip}.
  void validate() const;
};

struct AgentConfig {
  ssh::BruteForceConfig ssh;
  std::vector<std::string> ssh_sources;  // paths or "cmd:<command>"
  int ssh_year = 0;                      // 0 = current year at ingest

  phishing::PhishConfig phish;
  std::optional<std::filesystem::path> blacklist_path;
  std::optional<std::filesystem::path> url_feed;

  bool etd_enabled = true;
  std::filesystem::path model_dir = "models";
  std::filesystem::path data_path = "data/normal_ssh_data.csv";
  std::optional<std::filesystem::path> geo_path;
  etd::LatLon centroid;
  etd::FeatureConfig features;
  retrain::RetrainConfig retrain;

  std::vector<SinkConfig> sinks;
  MitigationPolicy mitigation;
  std::optional<std::filesystem::path> dead_letter_path;
  std::size_t queue_capacity = 10'000;
  std::chrono::milliseconds poll_interval{60'000};
  std::chrono::milliseconds restart_initial{200};
  std::chrono::milliseconds restart_max{30'000};
};

// Flat `key = value` text; '#' comments. Throws ConfigError naming the key.
AgentConfig parse_config(std::string_view text);

// Reads and parses a file, then validate().
AgentConfig load_config(const std::filesystem::path& path);

// Value checks plus existence of every referenced input file.
void validate(const AgentConfig& cfg);

// Key/value pairs in file order; exposed for tests and tools.
std::vector<std::pair<std::string, std::string>> parse_key_values(
    std::string_view text);

}  // namespace sentinel::agent

#endif  // SENTINEL_AGENT_CONFIG_HPP_
