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

#include "sentinel/agent/log.hpp"

#include <ostream>

#include "sentinel/core/timestamp.hpp"

namespace sentinel::agent {
namespace {

std::string_view level_name(LogLevel l) {
  switch (l) {
    case LogLevel::kDebug: return "debug";
    case LogLevel::kInfo: return "info";
    case LogLevel::kWarn: return "warn";
    case LogLevel::kError: return "error";
  }
  return "info";
}

}  // namespace

void StructuredLog::write(LogLevel level, std::string_view msg,
                          nlohmann::ordered_json fields) {
  if (level < min_level_) return;
  nlohmann::ordered_json line;
  line["ts"] = format_iso8601(Timestamp::Now());
  line["level"] = level_name(level);
  line["msg"] = msg;
  for (auto& [k, v] : fields.items()) line[k] = v;
  const std::string text = line.dump();
  std::lock_guard lock(mu_);
  *out_ << text << '\n';
  out_->flush();
}

}  // namespace sentinel::agent
