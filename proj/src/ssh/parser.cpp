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

#include "sentinel/ssh/parser.hpp"

#include <cstddef>

namespace sentinel::ssh {
namespace {

// Cursor over a line; each consume_* either advances or leaves pos unchanged.
struct Scanner {
  std::string_view s;
  std::size_t pos = 0;

  bool literal(std::string_view lit) {
    if (s.substr(pos, lit.size()) != lit) return false;
    pos += lit.size();
    return true;
  }

  // Maximal run of non-space characters; empty token fails.
  bool token(std::string_view& out) {
    std::size_t end = pos;
    while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
    if (end == pos) return false;
    out = s.substr(pos, end - pos);
    pos = end;
    return true;
  }

  bool digits(std::string_view& out) {
    std::size_t end = pos;
    while (end < s.size() && s[end] >= '0' && s[end] <= '9') ++end;
    if (end == pos) return false;
    out = s.substr(pos, end - pos);
    pos = end;
    return true;
  }
};

// "Mon DD HH:MM:SS HOST sshd[PID]: "
bool syslog_prefix(Scanner& sc, int year, Timestamp& ts) {
  if (!try_parse_syslog_time(sc.s, year, ts)) return false;
  Scanner probe{sc.s, 15};
  std::string_view host, pid;
  if (!probe.literal(" ") || !probe.token(host) || !probe.literal(" sshd[") ||
      !probe.digits(pid) || !probe.literal("]: ")) {
    return false;
  }
  sc.pos = probe.pos;
  return true;
}

}  // namespace

LineParse parse_ssh_line_detailed(std::string_view line, int year,
                                  Timestamp fallback) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
    line.remove_suffix(1);
  }
  LineParse result;
  Scanner sc{line};
  Timestamp ts = fallback;
  if (!syslog_prefix(sc, year, ts)) {
    sc.pos = 0;
    ts = fallback;
  }

  SshAuthRecord rec;
  if (sc.literal("Failed password for ")) {
    rec.status = AuthStatus::kFailed;
    const std::size_t before = sc.pos;
    if (sc.literal("invalid user ")) {
      rec.invalid_user = true;
      Scanner probe = sc;
      std::string_view user;
      if (!(probe.token(user) && probe.literal(" from "))) {
        // Fall back to reading "invalid" as the user name.
        sc.pos = before;
        rec.invalid_user = false;
      }
    }
  } else if (sc.literal("Accepted password for ") ||
             sc.literal("Accepted publickey for ")) {
    rec.status = AuthStatus::kAccepted;
  } else {
    return result;
  }

  std::string_view user, ip_text, port_text;
  if (!sc.token(user) || !sc.literal(" from ") || !sc.token(ip_text) ||
      !sc.literal(" port ") || !sc.digits(port_text) || !sc.literal(" ssh2")) {
    return result;
  }
  if (sc.pos != line.size() && line[sc.pos] != ':') return result;

  if (ip_text.find(':') != std::string_view::npos) {
    result.kind = LineKind::kIpv6;
    return result;
  }
  const auto ip = try_parse_ip(ip_text);
  if (!ip || port_text.size() > 5) return result;
  int port = 0;
  for (char c : port_text) port = port * 10 + (c - '0');
  if (port > 65535) return result;

  rec.timestamp = ts;
  rec.user = std::string(user);
  rec.ip = *ip;
  rec.port = port;
  rec.raw = std::string(line);
  result.kind = LineKind::kAuth;
  result.record = std::move(rec);
  return result;
}

std::optional<SshAuthRecord> parse_ssh_line(std::string_view line, int year,
                                            Timestamp fallback) {
  return parse_ssh_line_detailed(line, year, fallback).record;
}

std::vector<LineParse> parse_lines(std::span<const std::string> lines,
                                   int year) {
  std::vector<LineParse> out(lines.size());
  const auto n = static_cast<std::ptrdiff_t>(lines.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] =
        parse_ssh_line_detailed(lines[static_cast<std::size_t>(i)], year);
  }
  return out;
}

namespace reference {
std::vector<LineParse> parse_lines_serial(std::span<const std::string> lines,
                                          int year) {
  std::vector<LineParse> out;
  out.reserve(lines.size());
  for (const auto& line : lines) {
    out.push_back(parse_ssh_line_detailed(line, year));
  }
  return out;
}
}  // namespace reference

}  // namespace sentinel::ssh
