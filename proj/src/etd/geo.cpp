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

#include "sentinel/etd/geo.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <string>

#include "sentinel/core/errors.hpp"

namespace sentinel::etd {
namespace {

std::uint32_t prefix_mask(int len) {
  return len == 0 ? 0u : ~std::uint32_t{0} << (32 - len);
}

double parse_double(std::string_view s, std::string_view what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(s), &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad " + std::string(what) + " \"" + std::string(s) +
                     "\"");
  }
}

}  // namespace

double haversine_km(LatLon a, LatLon b) {
  constexpr double kRadiusKm = 6371.0;
  constexpr double kRad = std::numbers::pi / 180.0;
  const double dlat = (b.lat - a.lat) * kRad;
  const double dlon = (b.lon - a.lon) * kRad;
  const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(a.lat * kRad) * std::cos(b.lat * kRad) *
                       std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

void GeoTable::add(IpAddress network, int prefix_len, LatLon where) {
  if (prefix_len < 0 || prefix_len > 32) {
    throw ParseError("prefix length out of range: " +
                     std::to_string(prefix_len));
  }
  by_prefix_[static_cast<std::size_t>(prefix_len)]
            [ip_to_numeric(network) & prefix_mask(prefix_len)] = where;
}

void GeoTable::add(std::string_view cidr, LatLon where) {
  const std::size_t slash = cidr.find('/');
  const IpAddress net = parse_ip(cidr.substr(0, slash));
  int len = 32;
  if (slash != std::string_view::npos) {
    const std::string_view len_text = cidr.substr(slash + 1);
    if (len_text.empty() || len_text.size() > 2 ||
        len_text.find_first_not_of("0123456789") != std::string_view::npos) {
      throw ParseError("bad CIDR prefix in \"" + std::string(cidr) + "\"");
    }
    len = std::stoi(std::string(len_text));
  }
  add(net, len, where);
}

std::optional<LatLon> GeoTable::lookup(IpAddress ip) const {
  const std::uint32_t v = ip_to_numeric(ip);
  for (int len = 32; len >= 0; --len) {
    const auto& table = by_prefix_[static_cast<std::size_t>(len)];
    if (table.empty()) continue;
    if (auto it = table.find(v & prefix_mask(len)); it != table.end()) {
      return it->second;
    }
  }
  return std::nullopt;
}

std::optional<double> GeoTable::distance_km(IpAddress ip) const {
  if (auto loc = lookup(ip)) return haversine_km(centroid_, *loc);
  return std::nullopt;
}

std::size_t GeoTable::size() const {
  std::size_t n = 0;
  for (const auto& t : by_prefix_) n += t.size();
  return n;
}

GeoTable GeoTable::Load(const std::filesystem::path& path, LatLon centroid) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open geo table " + path.string());
  GeoTable table(centroid);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (first && line.rfind("cidr", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    const std::size_t c1 = line.find(',');
    const std::size_t c2 =
        c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      throw ParseError("geo row needs cidr,lat,lon: \"" + line + "\"");
    }
    const std::string_view view = line;
    table.add(view.substr(0, c1),
              LatLon{parse_double(view.substr(c1 + 1, c2 - c1 - 1), "latitude"),
                     parse_double(view.substr(c2 + 1), "longitude")});
  }
  return table;
}

}  // namespace sentinel::etd
