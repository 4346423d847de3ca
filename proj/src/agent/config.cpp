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

#include "sentinel/agent/config.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "sentinel/core/errors.hpp"
#include "sentinel/retrain/schedule.hpp"

namespace sentinel::agent {
namespace {

namespace fs = std::filesystem;

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_list(std::string_view v) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    std::size_t comma = v.find(',', start);
    if (comma == std::string_view::npos) comma = v.size();
    std::string item = trim(v.substr(start, comma - start));
    if (!item.empty()) out.push_back(std::move(item));
    start = comma + 1;
  }
  return out;
}

template <class T>
T number(const std::string& key, const std::string& v) {
  T out{};
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("config key " + key + ": bad number \"" + v + "\"");
  }
  return out;
}

bool boolean(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config key " + key + ": expected true/false, got \"" +
                    v + "\"");
}

SinkKind sink_kind(const std::string& key, const std::string& v) {
  if (v == "stdout") return SinkKind::kStdout;
  if (v == "file") return SinkKind::kFile;
  if (v == "webhook") return SinkKind::kWebhook;
  throw ConfigError("config key " + key + ": unknown sink kind \"" + v + "\"");
}

bool set_weight(phishing::HeuristicWeights& w, const std::string& name,
                int value) {
  if (name == "brand_similarity") w.brand_similarity = value;
  else if (name == "first_host_keyword") w.first_host_keyword = value;
  else if (name == "extra_host_keyword") w.extra_host_keyword = value;
  else if (name == "host_keyword_cap") w.host_keyword_cap = value;
  else if (name == "path_keyword") w.path_keyword = value;
  else if (name == "plain_http") w.plain_http = value;
  else if (name == "multi_hyphen_domain") w.multi_hyphen_domain = value;
  else if (name == "deep_subdomain") w.deep_subdomain = value;
  else if (name == "percent_encoding") w.percent_encoding = value;
  else return false;
  return true;
}

void require_file(const fs::path& p, std::string_view key) {
  std::error_code ec;
  if (!fs::exists(p, ec)) {
    throw ConfigError(std::string(key) + ": file not found: " + p.string());
  }
}

}  // namespace

void MitigationPolicy::validate() const {
  const std::size_t first = command_template.find("{ip}");
  if (first == std::string::npos ||
      command_template.find("{ip}", first + 1) != std::string::npos) {
    throw ConfigError(
        "mitigation.command must contain {ip} exactly once: \"" +
        command_template + "\"");
  }
}

std::vector<std::pair<std::string, std::string>> parse_key_values(
    std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    std::string key = trim(std::string_view(t).substr(0, eq));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": empty key");
    }
    out.emplace_back(std::move(key), trim(std::string_view(t).substr(eq + 1)));
  }
  return out;
}

AgentConfig parse_config(std::string_view text) {
  AgentConfig cfg;
  std::map<int, SinkConfig> sinks;
  for (const auto& [key, v] : parse_key_values(text)) {
    if (key == "ssh.threshold") cfg.ssh.threshold = number<int>(key, v);
    else if (key == "ssh.window_secs") cfg.ssh.window_secs = number<std::int64_t>(key, v);
    else if (key == "ssh.poll_secs") {
      cfg.ssh.poll_secs = number<std::int64_t>(key, v);
      cfg.poll_interval = std::chrono::seconds(cfg.ssh.poll_secs);
    } else if (key == "ssh.cooldown_secs") cfg.ssh.cooldown_secs = number<std::int64_t>(key, v);
    else if (key == "ssh.whitelist") {
      for (const auto& ip : split_list(v)) {
        try {
          cfg.ssh.whitelist.insert(parse_ip(ip));
        } catch (const ParseError& e) {
          throw ConfigError("ssh.whitelist: " + std::string(e.what()));
        }
      }
    } else if (key == "ssh.source") cfg.ssh_sources = split_list(v);
    else if (key == "ssh.year") cfg.ssh_year = number<int>(key, v);
    else if (key == "phish.blacklist_path") cfg.blacklist_path = v;
    else if (key == "phish.threshold") cfg.phish.weights.flag_threshold = number<int>(key, v);
    else if (key == "phish.brands") cfg.phish.brands = split_list(v);
    else if (key == "phish.keywords") cfg.phish.keywords = split_list(v);
    else if (key == "phish.url_feed") cfg.url_feed = v;
    else if (key == "phish.cache.enabled") cfg.phish.cache.enabled = boolean(key, v);
    else if (key == "phish.cache.capacity") cfg.phish.cache.capacity = number<std::size_t>(key, v);
    else if (key == "phish.cache.ttl_secs") cfg.phish.cache.ttl_secs = number<std::int64_t>(key, v);
    else if (key.rfind("phish.weight.", 0) == 0) {
      if (!set_weight(cfg.phish.weights, key.substr(13), number<int>(key, v))) {
        throw ConfigError("unknown config key " + key);
      }
    } else if (key == "etd.enabled") cfg.etd_enabled = boolean(key, v);
    else if (key == "etd.model_dir") cfg.model_dir = v;
    else if (key == "etd.data_path") cfg.data_path = v;
    else if (key == "etd.geo_path") cfg.geo_path = v;
    else if (key == "etd.centroid") {
      const auto parts = split_list(v);
      if (parts.size() != 2) throw ConfigError("etd.centroid expects lat,lon");
      cfg.centroid = {number<double>(key, parts[0]), number<double>(key, parts[1])};
    } else if (key == "etd.freq_window_secs") cfg.features.freq_window_secs = number<std::int64_t>(key, v);
    else if (key == "etd.quantile") cfg.retrain.quantile = number<double>(key, v);
    else if (key == "etd.window_days") cfg.retrain.window_days = number<int>(key, v);
    else if (key == "etd.holdout_fraction") cfg.retrain.holdout_fraction = number<double>(key, v);
    else if (key == "etd.max_holdout_flag_rate") cfg.retrain.max_holdout_flag_rate = number<double>(key, v);
    else if (key == "etd.schedule") cfg.retrain.schedule = v;
    else if (key == "etd.iforest_threshold") cfg.retrain.train.iforest_threshold = number<double>(key, v);
    else if (key == "etd.trees") cfg.retrain.train.tree_count = number<std::size_t>(key, v);
    else if (key == "etd.subsample") cfg.retrain.train.subsample = number<std::size_t>(key, v);
    else if (key == "etd.seed") cfg.retrain.train.seed = number<std::uint64_t>(key, v);
    else if (key == "mitigation.enabled") cfg.mitigation.enabled = boolean(key, v);
    else if (key == "mitigation.command") cfg.mitigation.command_template = v;
    else if (key == "agent.dead_letter") cfg.dead_letter_path = v;
    else if (key == "agent.queue_capacity") cfg.queue_capacity = number<std::size_t>(key, v);
    else if (key == "agent.poll_ms") cfg.poll_interval = std::chrono::milliseconds(number<std::int64_t>(key, v));
    else if (key == "agent.restart_initial_ms") cfg.restart_initial = std::chrono::milliseconds(number<std::int64_t>(key, v));
    else if (key == "agent.restart_max_ms") cfg.restart_max = std::chrono::milliseconds(number<std::int64_t>(key, v));
    else if (key.rfind("sink.", 0) == 0) {
      const std::size_t dot = key.find('.', 5);
      if (dot == std::string::npos) throw ConfigError("unknown config key " + key);
      const int index = number<int>(key, key.substr(5, dot - 5));
      const std::string field = key.substr(dot + 1);
      SinkConfig& s = sinks[index];
      if (field == "kind") s.kind = sink_kind(key, v);
      else if (field == "target") s.target = v;
      else if (field == "timeout_ms") s.timeout = std::chrono::milliseconds(number<std::int64_t>(key, v));
      else if (field == "retry") s.retry = number<int>(key, v);
      else throw ConfigError("unknown config key " + key);
    } else {
      throw ConfigError("unknown config key " + key);
    }
  }
  cfg.retrain.train.quantile = cfg.retrain.quantile;
  cfg.retrain.train.window_days = cfg.retrain.window_days;
  for (auto& [_, s] : sinks) cfg.sinks.push_back(std::move(s));
  return cfg;
}

void validate(const AgentConfig& cfg) {
  cfg.ssh.validate();
  cfg.phish.weights.validate();
  cfg.retrain.validate();
  cfg.mitigation.validate();
  retrain::Schedule::Parse(cfg.retrain.schedule);
  if (cfg.sinks.empty()) throw ConfigError("at least one sink is required");
  for (const auto& s : cfg.sinks) {
    if (s.retry < 0) throw ConfigError("sink retry must be >= 0");
    if (s.kind == SinkKind::kFile && s.target.empty()) {
      throw ConfigError("file sink needs a target path");
    }
    if (s.kind == SinkKind::kWebhook &&
        s.target.rfind("http://", 0) != 0 &&
        s.target.rfind("https://", 0) != 0) {
      throw ConfigError("webhook sink target must be an http(s) URL: \"" +
                        s.target + "\"");
    }
  }
  if (cfg.queue_capacity == 0) throw ConfigError("agent.queue_capacity must be > 0");
  if (cfg.poll_interval.count() <= 0) throw ConfigError("poll interval must be > 0");
  for (const auto& src : cfg.ssh_sources) {
    if (src.rfind("cmd:", 0) != 0) require_file(src, "ssh.source");
  }
  if (cfg.blacklist_path) require_file(*cfg.blacklist_path, "phish.blacklist_path");
  if (cfg.url_feed) require_file(*cfg.url_feed, "phish.url_feed");
  if (cfg.geo_path) require_file(*cfg.geo_path, "etd.geo_path");
}

AgentConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  AgentConfig cfg = parse_config(ss.str());
  validate(cfg);
  return cfg;
}

}  // namespace sentinel::agent
