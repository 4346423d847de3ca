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

#ifndef SENTINEL_AGENT_SINKS_HPP_
#define SENTINEL_AGENT_SINKS_HPP_

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sentinel/agent/config.hpp"
#include "sentinel/core/event.hpp"

namespace sentinel::agent {

struct DeliveryResult {
  std::string sink;
  bool delivered = false;
  int attempts = 0;
  int retries = 0;
  std::string error;
};

class Sink {
 public:
  virtual ~Sink() = default;
  virtual std::string name() const = 0;
  // `json` is one serialized event without a trailing newline.
  virtual DeliveryResult deliver(const std::string& json) = 0;
};

class StdoutSink final : public Sink {
 public:
  explicit StdoutSink(std::ostream& out);
  std::string name() const override { return "stdout"; }
  DeliveryResult deliver(const std::string& json) override;

 private:
  std::mutex mu_;
  std::ostream* out_;
};

// Appends NDJSON lines.
class FileSink final : public Sink {
 public:
  explicit FileSink(std::filesystem::path path);
  std::string name() const override { return "file:" + path_.string(); }
  DeliveryResult deliver(const std::string& json) override;

 private:
  std::mutex mu_;
  std::filesystem::path path_;
  std::ofstream out_;
};

// POSTs the event as application/json; retries 5xx, timeouts and
// connection failures up to `retry` times.
class WebhookSink final : public Sink {
 public:
  WebhookSink(std::string url, std::chrono::milliseconds timeout, int retry);
  std::string name() const override { return "webhook:" + url_; }
  DeliveryResult deliver(const std::string& json) override;

 private:
  std::string url_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;
  std::chrono::milliseconds timeout_;
  int retry_;
};

// Undeliverable events and per-sink failures. Appends NDJSON to a file when
// configured and always keeps a count.
class DeadLetterLog {
 public:
  explicit DeadLetterLog(std::optional<std::filesystem::path> path = {});

  void record(std::string_view reason, std::string_view sink,
              const std::string& event_json);
  std::size_t count() const;
  std::vector<std::string> entries() const;  // most recent 1,000

 private:
  mutable std::mutex mu_;
  std::optional<std::filesystem::path> path_;
  std::ofstream out_;
  std::size_t count_ = 0;
  std::vector<std::string> recent_;
};

// Serializes once, delivers to each sink in order, and records every failed
// delivery in the dead-letter log. A failing sink never blocks the others.
std::vector<DeliveryResult> dispatch_alert(const SecurityEvent& event,
                                           std::span<Sink* const> sinks,
                                           DeadLetterLog& dead_letters);

std::unique_ptr<Sink> make_sink(const SinkConfig& cfg, std::ostream& stdout_stream);

}  // namespace sentinel::agent

#endif  // SENTINEL_AGENT_SINKS_HPP_
