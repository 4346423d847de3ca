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

#include "sentinel/ssh/brute_force.hpp"

#include <algorithm>

#include "sentinel/core/errors.hpp"

namespace sentinel::ssh {

void BruteForceConfig::validate() const {
  if (threshold < 1) throw ConfigError("ssh.threshold must be >= 1");
  if (window_secs <= 0) throw ConfigError("ssh.window_secs must be > 0");
  if (poll_secs <= 0) throw ConfigError("ssh.poll_secs must be > 0");
  if (cooldown() < 0) throw ConfigError("ssh.cooldown_secs must be >= 0");
}

BruteForceDetector::BruteForceDetector(BruteForceConfig cfg)
    : cfg_(std::move(cfg)) {
  cfg_.validate();
}

void BruteForceDetector::evict(IpState& st, Timestamp now) const {
  const Timestamp horizon = now - cfg_.window_secs;
  while (!st.failures.empty() && st.failures.front() < horizon) {
    st.failures.pop_front();
  }
}

std::vector<SecurityEvent> BruteForceDetector::ingest(
    const SshAuthRecord& rec) {
  std::vector<SecurityEvent> events;
  if (latest_ &&
      rec.timestamp < *latest_ - cfg_.out_of_order_tolerance_secs) {
    ++dropped_;
    return events;
  }
  if (!next_tick_) next_tick_ = rec.timestamp + cfg_.poll_secs;

  // A record stamped exactly on a tick belongs to the bucket that tick closes.
  if (rec.timestamp > *next_tick_) {
    events = evaluate(*next_tick_);
    // Ticks between here and the record have nothing pending.
    const std::int64_t gap = rec.timestamp - *next_tick_;
    *next_tick_ = *next_tick_ + (gap + cfg_.poll_secs - 1) / cfg_.poll_secs * cfg_.poll_secs;
  }
  if (!latest_ || rec.timestamp > *latest_) latest_ = rec.timestamp;

  if (rec.status != AuthStatus::kFailed || cfg_.whitelist.contains(rec.ip)) {
    return events;
  }
  IpState& st = state_[rec.ip];
  if (st.failures.empty() || st.failures.back() <= rec.timestamp) {
    st.failures.push_back(rec.timestamp);
  } else {
    st.failures.insert(
        std::upper_bound(st.failures.begin(), st.failures.end(),
                         rec.timestamp),
        rec.timestamp);
  }
  expiry_.emplace(rec.timestamp, rec.ip);
  dirty_.insert(rec.ip);
  sweep();
  return events;
}

void BruteForceDetector::sweep() {
  const Timestamp horizon = *latest_ - cfg_.window_secs;
  while (!expiry_.empty() && expiry_.top().first < horizon) {
    const IpAddress ip = expiry_.top().second;
    expiry_.pop();
    auto it = state_.find(ip);
    if (it == state_.end()) continue;
    IpState& st = it->second;
    evict(st, *latest_);
    if (st.failures.empty() && !dirty_.contains(ip) &&
        (!st.last_alert || *latest_ - *st.last_alert >= cfg_.cooldown())) {
      state_.erase(it);
    }
  }
}

std::vector<SecurityEvent> BruteForceDetector::flush() {
  if (!latest_) return {};
  return evaluate(*latest_);
}

std::vector<SecurityEvent> BruteForceDetector::evaluate(Timestamp now) {
  std::vector<SecurityEvent> events;
  // Deterministic output order.
  std::vector<IpAddress> pending(dirty_.begin(), dirty_.end());
  std::sort(pending.begin(), pending.end());
  for (const IpAddress ip : pending) {
    auto it = state_.find(ip);
    if (it == state_.end()) continue;
    IpState& st = it->second;
    evict(st, now);
    // Failures stamped after `now` belong to the next evaluation.
    const auto upto =
        std::upper_bound(st.failures.begin(), st.failures.end(), now);
    const auto count = static_cast<std::int64_t>(upto - st.failures.begin());
    const bool cooled =
        !st.last_alert || now - *st.last_alert >= cfg_.cooldown();
    if (count >= cfg_.threshold && cooled) {
      st.last_alert = now;
      events.push_back(SecurityEvent{*(upto - 1), BruteForce{ip, count}});
    }
    if (st.failures.empty() &&
        (!st.last_alert || now - *st.last_alert >= cfg_.cooldown())) {
      state_.erase(it);
    }
  }
  dirty_.clear();
  return events;
}

std::size_t BruteForceDetector::window_count(IpAddress ip) const {
  auto it = state_.find(ip);
  return it == state_.end() ? 0 : it->second.failures.size();
}

std::optional<Timestamp> BruteForceDetector::oldest_stored(
    IpAddress ip) const {
  auto it = state_.find(ip);
  if (it == state_.end() || it->second.failures.empty()) return std::nullopt;
  return it->second.failures.front();
}

ScanResult scan_batch(std::span<const std::string> lines,
                      const BruteForceConfig& cfg, int year) {
  ScanResult out;
  BruteForceDetector detector(cfg);
  for (const auto& line : lines) {
    auto parsed = parse_ssh_line_detailed(line, year);
    if (parsed.kind == LineKind::kIpv6) ++out.ipv6_skipped;
    if (!parsed.record) {
      ++out.skipped;
      continue;
    }
    auto events = detector.ingest(*parsed.record);
    out.events.insert(out.events.end(), events.begin(), events.end());
    out.records.push_back(std::move(*parsed.record));
  }
  auto tail = detector.flush();
  out.events.insert(out.events.end(), tail.begin(), tail.end());
  out.out_of_order = detector.dropped_out_of_order();
  return out;
}

}  // namespace sentinel::ssh
