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

#ifndef SENTINEL_CORE_EVENT_HPP_
#define SENTINEL_CORE_EVENT_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "sentinel/core/features.hpp"
#include "sentinel/core/ip.hpp"
#include "sentinel/core/timestamp.hpp"

namespace sentinel {

enum class EventType { kBruteForce, kPhishingAlert, kEmergentThreat };
enum class DetectionMethod { kBlacklist, kHeuristicAnalysis };
enum class Detector { kMahalanobis, kIsolationForest };

std::string_view to_string(EventType t);
std::string_view to_string(DetectionMethod m);
std::string_view to_string(Detector d);

struct BruteForce {
  IpAddress ip;
  std::int64_t failed_attempts = 0;
  bool operator==(const BruteForce&) const = default;
};

struct PhishingAlert {
  std::string url;
  int score = 0;
  DetectionMethod detection_method = DetectionMethod::kHeuristicAnalysis;
  bool operator==(const PhishingAlert&) const = default;
};

struct EmergentThreat {
  IpAddress ip;
  double anomaly_score = 0;
  EtdFeatureRow features;
  Detector detector = Detector::kMahalanobis;
  std::string model_version;
  bool operator==(const EmergentThreat&) const = default;
};

using EventPayload = std::variant<BruteForce, PhishingAlert, EmergentThreat>;

struct SecurityEvent {
  Timestamp timestamp;
  EventPayload payload;

  EventType type() const;
  bool operator==(const SecurityEvent&) const = default;
};

// Field order: timestamp, event_type, then the variant fields.
std::string serialize_event(const SecurityEvent& e);

// Accepts any key order. Throws ParseError.
SecurityEvent deserialize_event(std::string_view json);

}  // namespace sentinel

#endif  // SENTINEL_CORE_EVENT_HPP_
