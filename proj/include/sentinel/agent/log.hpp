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

#ifndef SENTINEL_AGENT_LOG_HPP_
#define SENTINEL_AGENT_LOG_HPP_

#include <iosfwd>
#include <mutex>
#include <string_view>

#include <nlohmann/json.hpp>

namespace sentinel::agent {

enum class LogLevel { kDebug, kInfo, kWarn, kError };

// One JSON object per line: {"ts", "level", "msg", ...fields}.
class StructuredLog {
 public:
  explicit StructuredLog(std::ostream& out) : out_(&out) {}

  void write(LogLevel level, std::string_view msg,
             nlohmann::ordered_json fields = nlohmann::ordered_json::object());
  void info(std::string_view msg,
            nlohmann::ordered_json f = nlohmann::ordered_json::object()) {
    write(LogLevel::kInfo, msg, std::move(f));
  }
  void warn(std::string_view msg,
            nlohmann::ordered_json f = nlohmann::ordered_json::object()) {
    write(LogLevel::kWarn, msg, std::move(f));
  }
  void error(std::string_view msg,
             nlohmann::ordered_json f = nlohmann::ordered_json::object()) {
    write(LogLevel::kError, msg, std::move(f));
  }

  void set_min_level(LogLevel l) { min_level_ = l; }

 private:
  std::mutex mu_;
  std::ostream* out_;
  LogLevel min_level_ = LogLevel::kInfo;
};

}  // namespace sentinel::agent

#endif  // SENTINEL_AGENT_LOG_HPP_
