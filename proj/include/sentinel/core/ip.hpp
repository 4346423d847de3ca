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

#ifndef SENTINEL_CORE_IP_HPP_
#define SENTINEL_CORE_IP_HPP_

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace sentinel {

// IPv4 address stored as four octets, most significant first.
class IpAddress {
 public:
  constexpr IpAddress() = default;
  constexpr explicit IpAddress(std::array<std::uint8_t, 4> octets)
      : octets_(octets) {}

  constexpr const std::array<std::uint8_t, 4>& octets() const {
    return octets_;
  }

  constexpr auto operator<=>(const IpAddress&) const = default;

 private:
  std::array<std::uint8_t, 4> octets_{};
};

std::uint32_t ip_to_numeric(IpAddress ip);
IpAddress numeric_to_ip(std::uint32_t value);

// Dot-decimal, no leading zeros.
std::string to_string(IpAddress ip);

// Throws ParseError naming the offending token.
IpAddress parse_ip(std::string_view text);

// Strict dot-decimal; rejects leading zeros ("01") and out-of-range octets.
std::optional<IpAddress> try_parse_ip(std::string_view text);

}  // namespace sentinel

template <>
struct std::hash<sentinel::IpAddress> {
  std::size_t operator()(const sentinel::IpAddress& ip) const noexcept {
    return std::hash<std::uint32_t>{}(sentinel::ip_to_numeric(ip));
  }
};

#endif  // SENTINEL_CORE_IP_HPP_
