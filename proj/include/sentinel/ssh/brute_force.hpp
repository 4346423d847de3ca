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

#ifndef SENTINEL_SSH_BRUTE_FORCE_HPP_
#define SENTINEL_SSH_BRUTE_FORCE_HPP_

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sentinel/core/event.hpp"
#include "sentinel/ssh/parser.hpp"

namespace sentinel::ssh {

struct BruteForceConfig {
  int threshold = 5;
  std::int64_t window_secs = 300;
  std::int64_t poll_secs = 60;
  std::optional<std::int64_t> cooldown_secs;  // defaults to window_secs
  std::unordered_set<IpAddress> whitelist;
  std::int64_t out_of_order_tolerance_secs = 5;

  std::int64_t cooldown() const { return cooldown_secs.value_or(window_secs); }
  // Throws ConfigError.
  void validate() const;
};

// Per-IP sliding-window failure counter.
//
// Records are observed as they arrive. Thresholds are evaluated at poll
// ticks (anchor = first observed record, spacing poll_secs) and on flush().
// An evaluation at instant T considers only IPs with failures observed since
// the previous evaluation; such an IP alerts when its failures inside
// [T - W, T] number at least N, it is not whitelisted, and its last alert is
// at least `cooldown` old. failed_attempts is the window occupancy at T.
class BruteForceDetector {
 public:
  explicit BruteForceDetector(BruteForceConfig cfg);

  // Events for any poll ticks that `rec` moved past.
  std::vector<SecurityEvent> ingest(const SshAuthRecord& rec);

  // Evaluates pending IPs at the latest observed instant.
  std::vector<SecurityEvent> flush();

  const BruteForceConfig& config() const { return cfg_; }
  std::size_t dropped_out_of_order() const { return dropped_; }
  std::size_t window_count(IpAddress ip) const;
  std::optional<Timestamp> oldest_stored(IpAddress ip) const;
  std::optional<Timestamp> latest() const { return latest_; }

 private:
  struct IpState {
    std::deque<Timestamp> failures;  // sorted
    std::optional<Timestamp> last_alert;
  };

  std::vector<SecurityEvent> evaluate(Timestamp now);
  void evict(IpState& st, Timestamp now) const;
  // Drops every stored failure older than latest - W, across all IPs.
  void sweep();

  BruteForceConfig cfg_;
  std::unordered_map<IpAddress, IpState> state_;
  std::unordered_set<IpAddress> dirty_;
  std::priority_queue<std::pair<Timestamp, IpAddress>,
                      std::vector<std::pair<Timestamp, IpAddress>>,
                      std::greater<>>
      expiry_;
  std::optional<Timestamp> latest_;
  std::optional<Timestamp> next_tick_;
  std::size_t dropped_ = 0;
};

struct ScanResult {
  std::vector<SshAuthRecord> records;
  std::vector<SecurityEvent> events;
  std::size_t skipped = 0;
  std::size_t ipv6_skipped = 0;
  std::size_t out_of_order = 0;
};

// parse_ssh_line + ingest folded over the batch, then flush.
ScanResult scan_batch(std::span<const std::string> lines,
                      const BruteForceConfig& cfg, int year);

}  // namespace sentinel::ssh

#endif  // SENTINEL_SSH_BRUTE_FORCE_HPP_
