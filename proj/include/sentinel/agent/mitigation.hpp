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

#ifndef SENTINEL_AGENT_MITIGATION_HPP_
#define SENTINEL_AGENT_MITIGATION_HPP_

#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sentinel/agent/config.hpp"
#include "sentinel/core/event.hpp"

namespace sentinel::agent {

class CommandExecutor {
 public:
  virtual ~CommandExecutor() = default;
  // Returns the command's exit status.
  virtual int run(const std::string& command) = 0;
};

// std::system; exit status decoded from the wait status.
class ShellExecutor final : public CommandExecutor {
 public:
  int run(const std::string& command) override;
};

// Records calls and returns a fixed status. Thread-safe.
class RecordingExecutor final : public CommandExecutor {
 public:
  explicit RecordingExecutor(int status = 0) : status_(status) {}
  int run(const std::string& command) override;
  std::vector<std::string> calls() const;

 private:
  mutable std::mutex mu_;
  int status_;
  std::vector<std::string> calls_;
};

enum class MitigationMode { kWouldExecute, kExecuted, kFailed, kReviewQueued };

std::string_view to_string(MitigationMode m);

struct MitigationAction {
  Timestamp timestamp;
  EventType event_type = EventType::kBruteForce;
  std::string ip;
  std::string command;  // empty for review entries
  MitigationMode mode = MitigationMode::kWouldExecute;
  std::optional<int> exit_status;

  std::string to_json() const;
};

// Substitutes the single {ip} placeholder.
std::string render_command(const std::string& command_template, IpAddress ip);

// BruteForce: render, then execute (enabled) or record (dry run).
// EmergentThreat: review-queue entry, nothing executed.
// PhishingAlert: no action.
std::optional<MitigationAction> mitigate(const SecurityEvent& event,
                                         const MitigationPolicy& policy,
                                         CommandExecutor& executor);

}  // namespace sentinel::agent

#endif  // SENTINEL_AGENT_MITIGATION_HPP_
