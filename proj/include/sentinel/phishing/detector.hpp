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

#ifndef SENTINEL_PHISHING_DETECTOR_HPP_
#define SENTINEL_PHISHING_DETECTOR_HPP_

#include <cstddef>
#include <filesystem>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sentinel/core/event.hpp"
#include "sentinel/phishing/url.hpp"

namespace sentinel::phishing {

// Unit-cost edit distance (insert, delete, substitute).
std::size_t levenshtein(std::string_view a, std::string_view b);

struct HeuristicWeights {
  int brand_similarity = 40;
  int first_host_keyword = 30;
  int extra_host_keyword = 15;
  int host_keyword_cap = 45;
  int path_keyword = 10;
  int plain_http = 15;
  int multi_hyphen_domain = 25;
  int deep_subdomain = 20;
  int percent_encoding = 15;
  int flag_threshold = 70;

  void validate() const;
};

class Blacklist {
 public:
  Blacklist() = default;
  explicit Blacklist(std::span<const std::string> domains);

  // One domain per line, '#' starts a comment. Throws IoError.
  static Blacklist Load(const std::filesystem::path& path);

  void add(std::string_view domain);
  bool contains(std::string_view registered_domain) const;
  std::size_t size() const { return domains_.size(); }

 private:
  std::unordered_set<std::string> domains_;
};

bool check_blacklist(const UrlParts& parts, const Blacklist& bl);

struct HeuristicResult {
  int score = 0;
  std::vector<std::string> triggered;
};

HeuristicResult heuristic_score(const UrlParts& parts,
                                const HeuristicWeights& w,
                                std::span<const std::string> brands,
                                std::span<const std::string> keywords);

struct PhishVerdict {
  std::string url;
  int score = 0;
  DetectionMethod method = DetectionMethod::kHeuristicAnalysis;
  std::vector<std::string> triggered;

  bool operator==(const PhishVerdict&) const = default;
};

struct UrlEvaluation {
  std::optional<PhishVerdict> verdict;  // empty on invalid input
  std::optional<SecurityEvent> alert;
  std::string error;

  bool ok() const { return verdict.has_value(); }
};

std::vector<std::string> default_brands();
std::vector<std::string> default_keywords();

UrlEvaluation evaluate_url(std::string_view url, const Blacklist& bl,
                           const HeuristicWeights& w,
                           std::span<const std::string> brands,
                           std::span<const std::string> keywords,
                           Timestamp now);

struct CacheConfig {
  bool enabled = false;
  std::size_t capacity = 10'000;
  std::int64_t ttl_secs = 300;
};

// Bounded LRU of verdicts with a time-to-live. Thread-safe.
class VerdictCache {
 public:
  explicit VerdictCache(CacheConfig cfg) : cfg_(cfg) {}

  std::optional<PhishVerdict> get(const std::string& url, Timestamp now);
  void put(const std::string& url, const PhishVerdict& v, Timestamp now);
  std::size_t size() const;

 private:
  struct Entry {
    std::string url;
    PhishVerdict verdict;
    Timestamp stored;
  };
  CacheConfig cfg_;
  mutable std::mutex mu_;
  std::list<Entry> lru_;  // front = most recent
  std::unordered_map<std::string, std::list<Entry>::iterator> index_;
};

struct PhishConfig {
  HeuristicWeights weights;
  std::vector<std::string> brands = default_brands();
  std::vector<std::string> keywords = default_keywords();
  CacheConfig cache;
};

// Blacklist, weights and lists bundled for concurrent callers. The blacklist
// can be replaced atomically while evaluations are in flight.
class PhishDetector {
 public:
  explicit PhishDetector(PhishConfig cfg, Blacklist bl = Blacklist());

  UrlEvaluation evaluate(std::string_view url, Timestamp now) const;
  void reload_blacklist(Blacklist bl);
  std::shared_ptr<const Blacklist> blacklist() const;
  const PhishConfig& config() const { return cfg_; }

 private:
  PhishConfig cfg_;
  mutable std::mutex bl_mu_;
  std::shared_ptr<const Blacklist> blacklist_;
  mutable std::unique_ptr<VerdictCache> cache_;
};

// Evaluates a batch, in parallel when OpenMP is available.
std::vector<UrlEvaluation> evaluate_batch(const PhishDetector& detector,
                                          std::span<const std::string> urls,
                                          Timestamp now);

namespace reference {
std::vector<UrlEvaluation> evaluate_batch_serial(
    const PhishDetector& detector, std::span<const std::string> urls,
    Timestamp now);
}  // namespace reference

}  // namespace sentinel::phishing

#endif  // SENTINEL_PHISHING_DETECTOR_HPP_
