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

#ifndef SENTINEL_SSH_TAIL_HPP_
#define SENTINEL_SSH_TAIL_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <unordered_set>
#include <vector>

namespace sentinel::ssh {

enum class Health { kOk, kDegraded };

// A polled source of log lines.
class LineSource {
 public:
  virtual ~LineSource() = default;
  // Lines that appeared since the previous poll, in order.
  virtual std::vector<std::string> poll() = 0;
  virtual Health health() const = 0;
  virtual std::string health_message() const = 0;
};

// Follows a growing file. Truncation or replacement (inode change) restarts
// from offset 0. A trailing line without '\n' is held until completed.
class FileTailer final : public LineSource {
 public:
  explicit FileTailer(std::filesystem::path path, bool from_start = true);

  std::vector<std::string> poll() override;
  Health health() const override { return health_; }
  std::string health_message() const override { return message_; }
  std::uintmax_t offset() const { return offset_; }

 private:
  std::filesystem::path path_;
  std::uintmax_t offset_ = 0;
  std::uintmax_t inode_ = 0;
  std::string partial_;
  Health health_ = Health::kOk;
  std::string message_;
};

// Runs a shell command each poll (e.g. a "last 5 minutes" log query) and
// yields lines not present in the previous run's output.
class CommandSource final : public LineSource {
 public:
  explicit CommandSource(std::string command);

  std::vector<std::string> poll() override;
  Health health() const override { return health_; }
  std::string health_message() const override { return message_; }

 private:
  std::string command_;
  std::unordered_set<std::string> previous_;
  Health health_ = Health::kOk;
  std::string message_;
};

// "cmd:<shell command>" selects CommandSource, anything else is a path.
std::unique_ptr<LineSource> make_line_source(const std::string& spec);

}  // namespace sentinel::ssh

#endif  // SENTINEL_SSH_TAIL_HPP_
