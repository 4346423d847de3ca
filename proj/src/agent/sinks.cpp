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

#include "sentinel/agent/sinks.hpp"

#include <ostream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "sentinel/core/errors.hpp"

namespace sentinel::agent {

StdoutSink::StdoutSink(std::ostream& out) : out_(&out) {}

DeliveryResult StdoutSink::deliver(const std::string& json) {
  std::lock_guard lock(mu_);
  *out_ << json << '\n';
  out_->flush();
  DeliveryResult r{name(), static_cast<bool>(*out_), 1, 0, ""};
  if (!r.delivered) r.error = "stdout write failed";
  return r;
}

FileSink::FileSink(std::filesystem::path path)
    : path_(std::move(path)), out_(path_, std::ios::app | std::ios::binary) {}

DeliveryResult FileSink::deliver(const std::string& json) {
  std::lock_guard lock(mu_);
  DeliveryResult r{name(), false, 1, 0, ""};
  if (!out_.is_open()) {
    out_.clear();
    out_.open(path_, std::ios::app | std::ios::binary);
  }
  if (!out_) {
    r.error = "cannot open " + path_.string();
    out_.close();
    return r;
  }
  out_ << json << '\n';
  out_.flush();
  r.delivered = static_cast<bool>(out_);
  if (!r.delivered) {
    r.error = "write to " + path_.string() + " failed";
    out_.close();
  }
  return r;
}

WebhookSink::WebhookSink(std::string url, std::chrono::milliseconds timeout,
                         int retry)
    : url_(std::move(url)), timeout_(timeout), retry_(retry) {
  const std::size_t scheme_end = url_.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("webhook URL needs a scheme: " + url_);
  }
  const std::size_t path_start = url_.find('/', scheme_end + 3);
  origin_ = url_.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url_.substr(path_start);
}

DeliveryResult WebhookSink::deliver(const std::string& json) {
  DeliveryResult r{name(), false, 0, 0, ""};
  httplib::Client client(origin_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout_);
  const auto usecs =
      std::chrono::duration_cast<std::chrono::microseconds>(timeout_ - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  for (int attempt = 0; attempt <= retry_; ++attempt) {
    ++r.attempts;
    r.retries = attempt;
    auto res = client.Post(path_, json, "application/json");
    if (res) {
      if (res->status >= 200 && res->status < 300) {
        r.delivered = true;
        r.error.clear();
        return r;
      }
      r.error = "HTTP " + std::to_string(res->status);
      if (res->status < 500) return r;  // client errors are not retried
    } else {
      r.error = httplib::to_string(res.error());
    }
  }
  return r;
}

DeadLetterLog::DeadLetterLog(std::optional<std::filesystem::path> path)
    : path_(std::move(path)) {
  if (path_) out_.open(*path_, std::ios::app | std::ios::binary);
}

void DeadLetterLog::record(std::string_view reason, std::string_view sink,
                           const std::string& event_json) {
  nlohmann::ordered_json j;
  j["ts"] = format_iso8601(Timestamp::Now());
  j["reason"] = reason;
  j["sink"] = sink;
  nlohmann::json parsed = nlohmann::json::parse(event_json, nullptr, false);
  if (parsed.is_discarded()) {
    j["event"] = event_json;
  } else {
    j["event"] = std::move(parsed);
  }
  const std::string line = j.dump();
  std::lock_guard lock(mu_);
  ++count_;
  recent_.push_back(line);
  if (recent_.size() > 1000) recent_.erase(recent_.begin());
  if (out_.is_open()) {
    out_ << line << '\n';
    out_.flush();
  }
}

std::size_t DeadLetterLog::count() const {
  std::lock_guard lock(mu_);
  return count_;
}

std::vector<std::string> DeadLetterLog::entries() const {
  std::lock_guard lock(mu_);
  return recent_;
}

std::vector<DeliveryResult> dispatch_alert(const SecurityEvent& event,
                                           std::span<Sink* const> sinks,
                                           DeadLetterLog& dead_letters) {
  const std::string json = serialize_event(event);
  std::vector<DeliveryResult> results;
  results.reserve(sinks.size());
  for (Sink* sink : sinks) {
    DeliveryResult r;
    try {
      r = sink->deliver(json);
    } catch (const std::exception& e) {
      r = DeliveryResult{sink->name(), false, 1, 0, e.what()};
    }
    if (!r.delivered) dead_letters.record(r.error, r.sink, json);
    results.push_back(std::move(r));
  }
  if (sinks.empty()) dead_letters.record("no sinks configured", "", json);
  return results;
}

std::unique_ptr<Sink> make_sink(const SinkConfig& cfg,
                                std::ostream& stdout_stream) {
  switch (cfg.kind) {
    case SinkKind::kStdout:
      return std::make_unique<StdoutSink>(stdout_stream);
    case SinkKind::kFile:
      return std::make_unique<FileSink>(cfg.target);
    case SinkKind::kWebhook:
      return std::make_unique<WebhookSink>(cfg.target, cfg.timeout, cfg.retry);
  }
  return nullptr;
}

}  // namespace sentinel::agent
