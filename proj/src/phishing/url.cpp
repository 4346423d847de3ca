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

#include "sentinel/phishing/url.hpp"

#include <algorithm>

#include "sentinel/core/errors.hpp"

namespace sentinel::phishing {
namespace {

char lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_hex(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') ||
         (c >= 'A' && c <= 'F');
}

bool host_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' ||
         c == '.' || c == '_';
}

int count_percent(std::string_view s) {
  int n = 0;
  for (std::size_t i = 0; i + 2 < s.size(); ++i) {
    if (s[i] == '%' && is_hex(s[i + 1]) && is_hex(s[i + 2])) {
      ++n;
      i += 2;
    }
  }
  return n;
}

[[noreturn]] void invalid(std::string_view text, std::string_view why) {
  throw ParseError("invalid URL \"" + std::string(text) + "\": " +
                   std::string(why));
}

}  // namespace

std::string registered_domain_of(std::string_view host) {
  const std::size_t last = host.rfind('.');
  if (last == std::string_view::npos || last == 0) return std::string(host);
  const std::size_t prev = host.rfind('.', last - 1);
  if (prev == std::string_view::npos) return std::string(host);
  return std::string(host.substr(prev + 1));
}

UrlParts parse_url(std::string_view text) {
  UrlParts parts;
  std::string_view rest = text;
  while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) {
    rest.remove_prefix(1);
  }
  while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t' ||
                           rest.back() == '\r' || rest.back() == '\n')) {
    rest.remove_suffix(1);
  }
  if (rest.empty()) invalid(text, "empty");

  const std::size_t sep = rest.find("://");
  if (sep != std::string_view::npos) {
    std::string scheme;
    for (char c : rest.substr(0, sep)) scheme.push_back(lower(c));
    if (scheme == "http") {
      parts.scheme = Scheme::kHttp;
    } else if (scheme == "https") {
      parts.scheme = Scheme::kHttps;
    }
    rest.remove_prefix(sep + 3);
  }

  const std::size_t auth_end = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, auth_end);
  std::string_view tail = auth_end == std::string_view::npos
                              ? std::string_view()
                              : rest.substr(auth_end);
  if (const std::size_t at = authority.rfind('@');
      at != std::string_view::npos) {
    authority.remove_prefix(at + 1);
  }
  if (const std::size_t colon = authority.find(':');
      colon != std::string_view::npos) {
    authority = authority.substr(0, colon);
  }
  while (!authority.empty() && authority.back() == '.') {
    authority.remove_suffix(1);
  }
  if (authority.empty()) invalid(text, "no host");
  for (char c : authority) {
    const char lc = lower(c);
    if (!host_char(lc)) invalid(text, "bad host character");
    parts.host.push_back(lc);
  }
  if (parts.host.front() == '.' ||
      parts.host.find("..") != std::string::npos) {
    invalid(text, "empty host label");
  }

  const std::size_t hash = tail.find('#');
  if (hash != std::string_view::npos) tail = tail.substr(0, hash);
  const std::size_t q = tail.find('?');
  parts.path = std::string(tail.substr(0, q));
  if (q != std::string_view::npos) parts.query = std::string(tail.substr(q + 1));

  parts.registered_domain = registered_domain_of(parts.host);
  const auto labels =
      static_cast<int>(std::count(parts.host.begin(), parts.host.end(), '.')) +
      1;
  parts.subdomain_depth = labels >= 2 ? labels - 2 : 0;
  parts.percent_encoded_count =
      count_percent(parts.path) + count_percent(parts.query);
  return parts;
}

}  // namespace sentinel::phishing
