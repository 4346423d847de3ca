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

#include "sentinel/core/ip.hpp"

#include "sentinel/core/errors.hpp"

namespace sentinel {

std::uint32_t ip_to_numeric(IpAddress ip) {
  const auto& o = ip.octets();
  return (std::uint32_t{o[0]} << 24) | (std::uint32_t{o[1]} << 16) |
         (std::uint32_t{o[2]} << 8) | std::uint32_t{o[3]};
}

IpAddress numeric_to_ip(std::uint32_t value) {
  return IpAddress({static_cast<std::uint8_t>(value >> 24),
                    static_cast<std::uint8_t>(value >> 16),
                    static_cast<std::uint8_t>(value >> 8),
                    static_cast<std::uint8_t>(value)});
}

std::string to_string(IpAddress ip) {
  std::string out;
  out.reserve(15);
  for (std::size_t i = 0; i < 4; ++i) {
    if (i > 0) out.push_back('.');
    out += std::to_string(ip.octets()[i]);
  }
  return out;
}

std::optional<IpAddress> try_parse_ip(std::string_view text) {
  std::array<std::uint8_t, 4> octets{};
  std::size_t pos = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    if (i > 0) {
      if (pos >= text.size() || text[pos] != '.') return std::nullopt;
      ++pos;
    }
    const std::size_t start = pos;
    unsigned value = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9' &&
           pos - start < 3) {
      value = value * 10 + static_cast<unsigned>(text[pos] - '0');
      ++pos;
    }
    const std::size_t len = pos - start;
    if (len == 0 || value > 255) return std::nullopt;
    if (len > 1 && text[start] == '0') return std::nullopt;
    octets[i] = static_cast<std::uint8_t>(value);
  }
  if (pos != text.size()) return std::nullopt;
  return IpAddress(octets);
}

IpAddress parse_ip(std::string_view text) {
  if (auto ip = try_parse_ip(text)) return *ip;
  // Name the first octet token that fails.
  std::size_t start = 0;
  int count = 0;
  while (true) {
    const std::size_t dot = text.find('.', start);
    const std::string_view token = text.substr(
        start, dot == std::string_view::npos ? std::string_view::npos
                                             : dot - start);
    ++count;
    const bool numeric =
        !token.empty() && token.size() <= 3 &&
        token.find_first_not_of("0123456789") == std::string_view::npos &&
        !(token.size() > 1 && token[0] == '0') && std::stoi(std::string(token)) <= 255;
    if (!numeric || count > 4) {
      throw ParseError("invalid IPv4 address \"" + std::string(text) +
                       "\": bad token \"" + std::string(token) + "\"");
    }
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  throw ParseError("invalid IPv4 address \"" + std::string(text) +
                   "\": expected 4 octets, got " + std::to_string(count));
}

}  // namespace sentinel
