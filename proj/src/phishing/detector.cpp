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

#include "sentinel/phishing/detector.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>

#include "sentinel/core/errors.hpp"

namespace sentinel::phishing {
namespace {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

}  // namespace

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[b.size()];
}

void HeuristicWeights::validate() const {
  for (int w : {brand_similarity, first_host_keyword, extra_host_keyword,
                host_keyword_cap, path_keyword, plain_http,
                multi_hyphen_domain, deep_subdomain, percent_encoding,
                flag_threshold}) {
    if (w < 0) throw ConfigError("phishing weights must be >= 0");
  }
  if (flag_threshold > 100) {
    throw ConfigError("phish.threshold must be in [0, 100]");
  }
}

Blacklist::Blacklist(std::span<const std::string> domains) {
  for (const auto& d : domains) add(d);
}

Blacklist Blacklist::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open blacklist " + path.string());
  Blacklist bl;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (!view.empty()) bl.add(view);
  }
  return bl;
}

void Blacklist::add(std::string_view domain) {
  std::string d = to_lower(trim(domain));
  while (!d.empty() && d.back() == '.') d.pop_back();
  if (!d.empty()) domains_.insert(std::move(d));
}

bool Blacklist::contains(std::string_view registered_domain) const {
  return domains_.contains(to_lower(registered_domain));
}

bool check_blacklist(const UrlParts& parts, const Blacklist& bl) {
  return bl.contains(parts.registered_domain);
}

HeuristicResult heuristic_score(const UrlParts& parts,
                                const HeuristicWeights& w,
                                std::span<const std::string> brands,
                                std::span<const std::string> keywords) {
  HeuristicResult r;
  int total = 0;
  auto fire = [&](std::string name, int weight) {
    r.triggered.push_back(std::move(name));
    total += weight;
  };

  for (const auto& brand : brands) {
    const std::size_t d =
        levenshtein(parts.registered_domain, to_lower(brand));
    if (d >= 1 && d <= 2) {
      fire("brand_similarity", w.brand_similarity);
      break;
    }
  }

  int host_hits = 0;
  for (const auto& kw : keywords) {
    if (!kw.empty() && parts.host.find(to_lower(kw)) != std::string::npos) {
      ++host_hits;
    }
  }
  if (host_hits > 0) {
    const int raw = w.first_host_keyword + (host_hits - 1) * w.extra_host_keyword;
    fire("host_keyword", std::min(raw, w.host_keyword_cap));
  }

  const std::string path_lower = to_lower(parts.path + "?" + parts.query);
  for (const auto& kw : keywords) {
    if (!kw.empty() && path_lower.find(to_lower(kw)) != std::string::npos) {
      fire("path_keyword", w.path_keyword);
      break;
    }
  }

  if (parts.scheme == Scheme::kHttp) fire("plain_http", w.plain_http);

  const std::string_view leftmost = std::string_view(parts.registered_domain)
                                        .substr(0, parts.registered_domain.find('.'));
  if (std::count(leftmost.begin(), leftmost.end(), '-') >= 2) {
    fire("multi_hyphen_domain", w.multi_hyphen_domain);
  }
  if (parts.subdomain_depth >= 3) fire("deep_subdomain", w.deep_subdomain);
  if (parts.percent_encoded_count >= 2) {
    fire("percent_encoding", w.percent_encoding);
  }

  r.score = std::clamp(total, 0, 100);
  return r;
}

std::vector<std::string> default_brands() {
  return {"google.com", "microsoft.com", "apple.com", "paypal.com"};
}

std::vector<std::string> default_keywords() {
  return {"login", "verify", "update"};
}

UrlEvaluation evaluate_url(std::string_view url, const Blacklist& bl,
                           const HeuristicWeights& w,
                           std::span<const std::string> brands,
                           std::span<const std::string> keywords,
                           Timestamp now) {
  UrlEvaluation out;
  UrlParts parts;
  try {
    parts = parse_url(url);
  } catch (const ParseError& e) {
    out.error = e.what();
    return out;
  }
  PhishVerdict v;
  v.url = std::string(url);
  if (check_blacklist(parts, bl)) {
    v.score = 100;
    v.method = DetectionMethod::kBlacklist;
    v.triggered = {"blacklist"};
  } else {
    auto h = heuristic_score(parts, w, brands, keywords);
    v.score = h.score;
    v.method = DetectionMethod::kHeuristicAnalysis;
    v.triggered = std::move(h.triggered);
  }
  if (v.method == DetectionMethod::kBlacklist || v.score >= w.flag_threshold) {
    out.alert = SecurityEvent{now, PhishingAlert{v.url, v.score, v.method}};
  }
  out.verdict = std::move(v);
  return out;
}

std::optional<PhishVerdict> VerdictCache::get(const std::string& url,
                                              Timestamp now) {
  std::lock_guard lock(mu_);
  auto it = index_.find(url);
  if (it == index_.end()) return std::nullopt;
  if (now - it->second->stored >= cfg_.ttl_secs) {
    lru_.erase(it->second);
    index_.erase(it);
    return std::nullopt;
  }
  lru_.splice(lru_.begin(), lru_, it->second);
  return it->second->verdict;
}

void VerdictCache::put(const std::string& url, const PhishVerdict& v,
                       Timestamp now) {
  if (cfg_.capacity == 0) return;
  std::lock_guard lock(mu_);
  if (auto it = index_.find(url); it != index_.end()) {
    lru_.erase(it->second);
    index_.erase(it);
  }
  lru_.push_front(Entry{url, v, now});
  index_[url] = lru_.begin();
  while (lru_.size() > cfg_.capacity) {
    index_.erase(lru_.back().url);
    lru_.pop_back();
  }
}

std::size_t VerdictCache::size() const {
  std::lock_guard lock(mu_);
  return lru_.size();
}

PhishDetector::PhishDetector(PhishConfig cfg, Blacklist bl)
    : cfg_(std::move(cfg)),
      blacklist_(std::make_shared<const Blacklist>(std::move(bl))) {
  cfg_.weights.validate();
  if (cfg_.cache.enabled) cache_ = std::make_unique<VerdictCache>(cfg_.cache);
}

std::shared_ptr<const Blacklist> PhishDetector::blacklist() const {
  std::lock_guard lock(bl_mu_);
  return blacklist_;
}

void PhishDetector::reload_blacklist(Blacklist bl) {
  auto fresh = std::make_shared<const Blacklist>(std::move(bl));
  std::lock_guard lock(bl_mu_);
  blacklist_ = std::move(fresh);
}

UrlEvaluation PhishDetector::evaluate(std::string_view url,
                                      Timestamp now) const {
  if (cache_) {
    const std::string key(url);
    if (auto hit = cache_->get(key, now)) {
      UrlEvaluation out;
      if (hit->method == DetectionMethod::kBlacklist ||
          hit->score >= cfg_.weights.flag_threshold) {
        out.alert =
            SecurityEvent{now, PhishingAlert{hit->url, hit->score, hit->method}};
      }
      out.verdict = std::move(*hit);
      return out;
    }
  }
  const auto bl = blacklist();
  auto out = evaluate_url(url, *bl, cfg_.weights, cfg_.brands, cfg_.keywords,
                          now);
  if (cache_ && out.verdict) cache_->put(std::string(url), *out.verdict, now);
  return out;
}

std::vector<UrlEvaluation> evaluate_batch(const PhishDetector& detector,
                                          std::span<const std::string> urls,
                                          Timestamp now) {
  std::vector<UrlEvaluation> out(urls.size());
  const auto n = static_cast<std::ptrdiff_t>(urls.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = detector.evaluate(urls[k], now);
  }
  return out;
}

namespace reference {
std::vector<UrlEvaluation> evaluate_batch_serial(
    const PhishDetector& detector, std::span<const std::string> urls,
    Timestamp now) {
  std::vector<UrlEvaluation> out;
  out.reserve(urls.size());
  for (const auto& url : urls) out.push_back(detector.evaluate(url, now));
  return out;
}
}  // namespace reference

}  // namespace sentinel::phishing
