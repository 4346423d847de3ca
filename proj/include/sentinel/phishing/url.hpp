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

#ifndef SENTINEL_PHISHING_URL_HPP_
#define SENTINEL_PHISHING_URL_HPP_

#include <string>
#include <string_view>

namespace sentinel::phishing {

enum class Scheme { kHttp, kHttps, kOther };

struct UrlParts {
  Scheme scheme = Scheme::kOther;
  std::string host;               // lowercase, no port or userinfo
  std::string registered_domain;  // last two labels of host
  int subdomain_depth = 0;
  std::string path;
  std::string query;
  int percent_encoded_count = 0;  // %XX sequences in path + query
};

// Throws ParseError ("invalid URL") when no host can be extracted.
UrlParts parse_url(std::string_view text);

// Last two dot-separated labels (the whole host when it has fewer).
std::string registered_domain_of(std::string_view host);

}  // namespace sentinel::phishing

#endif  // SENTINEL_PHISHING_URL_HPP_
