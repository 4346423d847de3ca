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

#ifndef SENTINEL_ETD_GEO_HPP_
#define SENTINEL_ETD_GEO_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <unordered_map>

#include "sentinel/core/ip.hpp"

namespace sentinel::etd {

struct LatLon {
  double lat = 0.0;
  double lon = 0.0;
  bool operator==(const LatLon&) const = default;
};

// Great-circle distance in km (mean Earth radius 6371 km).
double haversine_km(LatLon a, LatLon b);

// IPv4 CIDR prefix -> location, longest-prefix match, plus the reference
// centroid distances are measured from.
class GeoTable {
 public:
  GeoTable() = default;
  explicit GeoTable(LatLon centroid) : centroid_(centroid) {}

  // CSV "cidr,lat,lon"; a header line is skipped. Throws IoError/ParseError.
  static GeoTable Load(const std::filesystem::path& path, LatLon centroid);

  // Throws ParseError on malformed CIDR text.
  void add(std::string_view cidr, LatLon where);
  void add(IpAddress network, int prefix_len, LatLon where);

  std::optional<LatLon> lookup(IpAddress ip) const;
  std::optional<double> distance_km(IpAddress ip) const;

  LatLon centroid() const { return centroid_; }
  void set_centroid(LatLon c) { centroid_ = c; }
  std::size_t size() const;

 private:
  LatLon centroid_;
  std::array<std::unordered_map<std::uint32_t, LatLon>, 33> by_prefix_;
};

}  // namespace sentinel::etd

#endif  // SENTINEL_ETD_GEO_HPP_
