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

#ifndef SENTINEL_AGENT_AGENT_HPP_
#define SENTINEL_AGENT_AGENT_HPP_

#include <atomic>
#include <deque>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stop_token>
#include <string>
#include <thread>
#include <vector>

#include "sentinel/agent/config.hpp"
#include "sentinel/agent/log.hpp"
#include "sentinel/agent/mitigation.hpp"
#include "sentinel/agent/queue.hpp"
#include "sentinel/agent/sinks.hpp"
#include "sentinel/etd/features.hpp"
#include "sentinel/retrain/registry.hpp"
#include "sentinel/retrain/schedule.hpp"
#include "sentinel/ssh/tail.hpp"

namespace sentinel::agent {

struct AgentDeps {
  std::ostream* stdout_stream = nullptr;  // default std::cout
  std::ostream* log_stream = nullptr;     // default std::cerr
  CommandExecutor* executor = nullptr;    // default ShellExecutor
  // Called at the top of every task iteration; throwing simulates a crash.
  std::function<void(std::string_view task)> before_iteration;
  std::function<Timestamp()> clock;  // default wall clock
};

struct AgentStats {
  std::uint64_t events_emitted = 0;
  std::uint64_t events_dispatched = 0;
  std::uint64_t dead_letters = 0;
  std::uint64_t queue_overflow = 0;
  std::uint64_t retrains_accepted = 0;
  std::uint64_t retrains_rejected = 0;
  std::map<std::string, std::uint64_t> restarts;
};

// The monitoring daemon: one task per SSH source, an optional URL-feed
// evaluator, the ETD streaming scorer, the retrain scheduler and a single
// dispatcher. Tasks that throw are restarted with exponential backoff; their
// state (file offsets, sliding windows) survives the restart.
class Agent {
 public:
  explicit Agent(AgentConfig cfg, AgentDeps deps = {});
  ~Agent();

  Agent(const Agent&) = delete;
  Agent& operator=(const Agent&) = delete;

  void start();
  // Stops producers, lets them flush, then drains the dispatch queue.
  void stop();
  bool running() const { return running_; }

  // One synchronous retrain cycle; true when a candidate was accepted.
  bool retrain_now();

  AgentStats stats() const;
  retrain::ModelRegistry& registry() { return registry_; }
  DeadLetterLog& dead_letters() { return *dead_letters_; }
  std::vector<MitigationAction> actions() const;
  std::size_t history_size() const;

 private:
  struct SshTask {
    std::string name;
    std::unique_ptr<ssh::LineSource> source;
    ssh::BruteForceDetector detector;
    ssh::Health last_health = ssh::Health::kOk;
  };

  void load_initial_model();
  void launch(std::string name, std::function<void(std::stop_token)> body,
              std::stop_token stop, std::vector<std::jthread>& into);
  void supervise(const std::string& name,
                 const std::function<void(std::stop_token)>& body,
                 std::stop_token stop);
  void sleep_for(std::stop_token stop, std::chrono::milliseconds d);
  void hook(std::string_view task);

  void run_ssh(SshTask& task, std::stop_token stop);
  void run_url_feed(std::stop_token stop);
  void run_etd(std::stop_token stop);
  void run_retrain(std::stop_token stop);
  void run_dispatcher(std::stop_token stop);

  void emit(SecurityEvent e);
  void handle(const SecurityEvent& e);
  void score_record(const ssh::SshAuthRecord& rec);
  Timestamp now() const;

  AgentConfig cfg_;
  AgentDeps deps_;
  StructuredLog log_;
  ShellExecutor shell_;
  CommandExecutor* executor_;
  int year_;

  std::vector<std::unique_ptr<Sink>> sinks_;
  std::vector<Sink*> sink_ptrs_;
  std::unique_ptr<DeadLetterLog> dead_letters_;
  BoundedQueue<SecurityEvent> events_;
  BoundedQueue<ssh::SshAuthRecord> records_;

  std::vector<std::unique_ptr<SshTask>> ssh_tasks_;
  std::unique_ptr<phishing::PhishDetector> phish_;
  std::unique_ptr<ssh::FileTailer> url_feed_;
  etd::GeoTable geo_;
  etd::FeatureExtractor extractor_;
  retrain::ModelRegistry registry_;
  std::optional<retrain::RetrainTrigger> trigger_;
  bool warned_no_model_ = false;

  mutable std::mutex history_mu_;
  std::deque<retrain::TimedRow> history_;
  std::mutex retrain_mu_;

  mutable std::mutex actions_mu_;
  std::vector<MitigationAction> actions_;

  mutable std::mutex restarts_mu_;
  std::map<std::string, std::uint64_t> restarts_;
  std::atomic<std::uint64_t> emitted_{0};
  std::atomic<std::uint64_t> dispatched_{0};
  std::atomic<std::uint64_t> retrains_accepted_{0};
  std::atomic<std::uint64_t> retrains_rejected_{0};

  std::stop_source producers_stop_;
  std::stop_source dispatcher_stop_;
  std::vector<std::jthread> producers_;
  std::vector<std::jthread> dispatcher_;
  std::atomic<bool> running_{false};
};

// Blocks until `stop_flag` becomes true, then shuts down cleanly.
int run_agent(const AgentConfig& cfg, const std::atomic<bool>& stop_flag,
              AgentDeps deps = {});

}  // namespace sentinel::agent

#endif  // SENTINEL_AGENT_AGENT_HPP_
