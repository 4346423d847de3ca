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

#include "sentinel/agent/mitigation.hpp"

#include <sys/wait.h>

#include <cstdlib>

#include <nlohmann/json.hpp>

namespace sentinel::agent {

int ShellExecutor::run(const std::string& command) {
  const int status = std::system(command.c_str());
  if (status == -1) return -1;
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
}

int RecordingExecutor::run(const std::string& command) {
  std::lock_guard lock(mu_);
  calls_.push_back(command);
  return status_;
}

std::vector<std::string> RecordingExecutor::calls() const {
  std::lock_guard lock(mu_);
  return calls_;
}

std::string_view to_string(MitigationMode m) {
  switch (m) {
    case MitigationMode::kWouldExecute: return "would_execute";
    case MitigationMode::kExecuted: return "executed";
    case MitigationMode::kFailed: return "failed";
    case MitigationMode::kReviewQueued: return "review_queued";
  }
  return "";
}

std::string MitigationAction::to_json() const {
  nlohmann::ordered_json j;
  j["timestamp"] = format_iso8601(timestamp);
  j["event_type"] = std::string(sentinel::to_string(event_type));
  j["ip"] = ip;
  j["mode"] = std::string(agent::to_string(mode));
  if (!command.empty()) j["command"] = command;
  if (exit_status) j["exit_status"] = *exit_status;
  return j.dump();
}

std::string render_command(const std::string& command_template, IpAddress ip) {
  std::string out = command_template;
  const std::size_t pos = out.find("{ip}");
  if (pos != std::string::npos) out.replace(pos, 4, to_string(ip));
  return out;
}

std::optional<MitigationAction> mitigate(const SecurityEvent& event,
                                         const MitigationPolicy& policy,
                                         CommandExecutor& executor) {
  if (const auto* bf = std::get_if<BruteForce>(&event.payload)) {
    MitigationAction a;
    a.timestamp = event.timestamp;
    a.event_type = EventType::kBruteForce;
    a.ip = to_string(bf->ip);
    a.command = render_command(policy.command_template, bf->ip);
    if (!policy.enabled) {
      a.mode = MitigationMode::kWouldExecute;
      return a;
    }
    const int status = executor.run(a.command);
    a.exit_status = status;
    a.mode = status == 0 ? MitigationMode::kExecuted : MitigationMode::kFailed;
    return a;
  }
  if (const auto* t = std::get_if<EmergentThreat>(&event.payload)) {
    MitigationAction a;
    a.timestamp = event.timestamp;
    a.event_type = EventType::kEmergentThreat;
    a.ip = to_string(t->ip);
    a.mode = MitigationMode::kReviewQueued;
    return a;
  }
  return std::nullopt;
}

}  // namespace sentinel::agent
