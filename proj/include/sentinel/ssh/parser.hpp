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

#ifndef SENTINEL_SSH_PARSER_HPP_
#define SENTINEL_SSH_PARSER_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sentinel/core/ip.hpp"
#include "sentinel/core/timestamp.hpp"

namespace sentinel::ssh {

enum class AuthStatus { kFailed, kAccepted };

struct SshAuthRecord {
  Timestamp timestamp;
  std::string user;
  IpAddress ip;
  int port = 0;
  AuthStatus status = AuthStatus::kFailed;
  bool invalid_user = false;
  std::string raw;

  bool operator==(const SshAuthRecord&) const = default;
};

enum class LineKind {
  kAuth,     // matched the grammar
  kIgnored,  // anything else
  kIpv6,     // matched the grammar but with an IPv6 source
};

struct LineParse {
  LineKind kind = LineKind::kIgnored;
  std::optional<SshAuthRecord> record;
};

// Grammar (OpenSSH):
//   [Mon DD HH:MM:SS HOST sshd[PID]: ]
//   Failed password for [invalid user ]USER from IP port PORT ssh2[: ...]
//   Accepted (password|publickey) for USER from IP port PORT ssh2[: ...]
// Lines without the syslog prefix are stamped with `fallback`.
LineParse parse_ssh_line_detailed(std::string_view line, int year,
                                  Timestamp fallback = Timestamp());

std::optional<SshAuthRecord> parse_ssh_line(std::string_view line, int year,
                                            Timestamp fallback = Timestamp());

// Parses every line independently, in parallel when OpenMP is available.
std::vector<LineParse> parse_lines(std::span<const std::string> lines,
                                   int year);

namespace reference {
std::vector<LineParse> parse_lines_serial(std::span<const std::string> lines,
                                          int year);
}  // namespace reference

}  // namespace sentinel::ssh

#endif  // SENTINEL_SSH_PARSER_HPP_
