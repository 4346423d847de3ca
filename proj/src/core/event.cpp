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

#include "sentinel/core/event.hpp"

#include <nlohmann/json.hpp>

#include "sentinel/core/errors.hpp"

namespace sentinel {
namespace {

using ordered_json = nlohmann::ordered_json;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ordered_json features_to_json(const EtdFeatureRow& row) {
  ordered_json j;
  j["hour"] = row.hour;
  j["ip_numeric"] = row.ip_numeric;
  j["status"] = row.status;
  j["failed_attempts"] = row.failed_attempts;
  j["freq"] = row.freq;
  j["geo_distance"] = row.geo_distance;
  if (row.repo_event_count) j["repo_event_count"] = *row.repo_event_count;
  if (row.url_risk) j["url_risk"] = *row.url_risk;
  return j;
}

EtdFeatureRow features_from_json(const nlohmann::json& j) {
  EtdFeatureRow row;
  row.hour = j.at("hour").get<double>();
  row.ip_numeric = j.at("ip_numeric").get<double>();
  row.status = j.at("status").get<double>();
  row.failed_attempts = j.at("failed_attempts").get<double>();
  row.freq = j.at("freq").get<double>();
  row.geo_distance = j.at("geo_distance").get<double>();
  if (j.contains("repo_event_count")) {
    row.repo_event_count = j["repo_event_count"].get<double>();
  }
  if (j.contains("url_risk")) row.url_risk = j["url_risk"].get<double>();
  return row;
}

DetectionMethod method_from(std::string_view s) {
  if (s == "Blacklist") return DetectionMethod::kBlacklist;
  if (s == "HeuristicAnalysis") return DetectionMethod::kHeuristicAnalysis;
  throw ParseError("unknown detection_method \"" + std::string(s) + "\"");
}

Detector detector_from(std::string_view s) {
  if (s == "mahalanobis") return Detector::kMahalanobis;
  if (s == "isolation_forest") return Detector::kIsolationForest;
  throw ParseError("unknown detector \"" + std::string(s) + "\"");
}

}  // namespace

std::string_view to_string(EventType t) {
  switch (t) {
    case EventType::kBruteForce:
      return "BruteForce";
    case EventType::kPhishingAlert:
      return "PhishingAlert";
    case EventType::kEmergentThreat:
      return "EmergentThreat";
  }
  return "";
}

std::string_view to_string(DetectionMethod m) {
  return m == DetectionMethod::kBlacklist ? "Blacklist" : "HeuristicAnalysis";
}

std::string_view to_string(Detector d) {
  return d == Detector::kMahalanobis ? "mahalanobis" : "isolation_forest";
}

EventType SecurityEvent::type() const {
  return static_cast<EventType>(payload.index());
}

std::string serialize_event(const SecurityEvent& e) {
  ordered_json j;
  j["timestamp"] = format_iso8601(e.timestamp);
  j["event_type"] = std::string(to_string(e.type()));
  std::visit(overloaded{
                 [&](const BruteForce& b) {
                   j["ip"] = to_string(b.ip);
                   j["failed_attempts"] = b.failed_attempts;
                 },
                 [&](const PhishingAlert& p) {
                   j["url"] = p.url;
                   j["score"] = p.score;
                   j["detection_method"] =
                       std::string(to_string(p.detection_method));
                 },
                 [&](const EmergentThreat& t) {
                   j["ip"] = to_string(t.ip);
                   j["anomaly_score"] = t.anomaly_score;
                   j["detector"] = std::string(to_string(t.detector));
                   j["model_version"] = t.model_version;
                   j["features"] = features_to_json(t.features);
                 },
             },
             e.payload);
  return j.dump();
}

SecurityEvent deserialize_event(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    SecurityEvent e;
    e.timestamp = parse_iso8601(j.at("timestamp").get<std::string>());
    const auto type = j.at("event_type").get<std::string>();
    if (type == "BruteForce") {
      e.payload = BruteForce{parse_ip(j.at("ip").get<std::string>()),
                             j.at("failed_attempts").get<std::int64_t>()};
    } else if (type == "PhishingAlert") {
      e.payload = PhishingAlert{
          j.at("url").get<std::string>(), j.at("score").get<int>(),
          method_from(j.at("detection_method").get<std::string>())};
    } else if (type == "EmergentThreat") {
      e.payload = EmergentThreat{
          parse_ip(j.at("ip").get<std::string>()),
          j.at("anomaly_score").get<double>(),
          features_from_json(j.at("features")),
          detector_from(j.at("detector").get<std::string>()),
          j.at("model_version").get<std::string>()};
    } else {
      throw ParseError("unknown event_type \"" + type + "\"");
    }
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed event JSON: ") + ex.what());
  }
}

}  // namespace sentinel
