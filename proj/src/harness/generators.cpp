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

#include "sentinel/harness/generators.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <map>
#include <random>
#include <unordered_set>

#include "sentinel/core/errors.hpp"

namespace sentinel::harness {
namespace {

constexpr std::array<double, 6> kMean = {12.0, 2.9e9, 0.8, 1.5, 8.0, 600.0};
constexpr std::array<double, 6> kStd = {4.0, 3.0e8, 0.25, 1.0, 3.0, 250.0};

etd::Matrix make_covariance() {
  etd::Matrix corr = etd::Matrix::Identity(6);
  corr(2, 3) = corr(3, 2) = -0.4;  // status vs failed_attempts
  corr(3, 4) = corr(4, 3) = 0.5;   // failed_attempts vs freq
  etd::Matrix cov(6, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 6; ++j) cov(i, j) = corr(i, j) * kStd[i] * kStd[j];
  }
  return cov;
}

const etd::Matrix& baseline_cholesky() {
  static const etd::Matrix lower = [] {
    etd::Matrix l;
    if (!etd::cholesky(etd_baseline_covariance(), l)) {
      throw TrainingError("baseline covariance is not positive definite");
    }
    return l;
  }();
  return lower;
}

std::string syslog_time(Timestamp ts) {
  static constexpr const char* kMonths[] = {"Jan", "Feb", "Mar", "Apr",
                                            "May", "Jun", "Jul", "Aug",
                                            "Sep", "Oct", "Nov", "Dec"};
  std::time_t t = ts.epoch_seconds();
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s %2d %02d:%02d:%02d", kMonths[tm.tm_mon],
                tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

struct LogEvent {
  Timestamp ts;
  std::size_t seq = 0;
  IpAddress ip;
  bool failed = true;
  bool invalid_user = false;
  bool publickey = false;
  std::string user;
  int port = 22;
};

std::string render(const LogEvent& e, int pid) {
  std::string line = syslog_time(e.ts) + " sentinel-host sshd[" +
                     std::to_string(pid) + "]: ";
  if (e.failed) {
    line += "Failed password for ";
    if (e.invalid_user) line += "invalid user ";
  } else {
    line += e.publickey ? "Accepted publickey for " : "Accepted password for ";
  }
  line += e.user + " from " + to_string(e.ip) + " port " +
          std::to_string(e.port) + " ssh2";
  return line;
}

IpAddress random_ip(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> first(11, 197);
  std::uniform_int_distribution<int> octet(0, 255);
  std::uniform_int_distribution<int> last(1, 254);
  return IpAddress{{static_cast<std::uint8_t>(first(rng)),
                    static_cast<std::uint8_t>(octet(rng)),
                    static_cast<std::uint8_t>(octet(rng)),
                    static_cast<std::uint8_t>(last(rng))}};
}

bool window_exceeds(std::vector<Timestamp>& times, int threshold,
                    std::int64_t window) {
  std::sort(times.begin(), times.end());
  std::size_t lo = 0;
  for (std::size_t hi = 0; hi < times.size(); ++hi) {
    while (times[hi] - times[lo] > window) ++lo;
    if (static_cast<int>(hi - lo + 1) >= threshold) return true;
  }
  return false;
}

std::string random_word(std::mt19937_64& rng, int min_len, int max_len) {
  std::uniform_int_distribution<int> len(min_len, max_len);
  std::uniform_int_distribution<int> letter('a', 'z');
  std::string w(static_cast<std::size_t>(len(rng)), 'a');
  for (auto& c : w) c = static_cast<char>(letter(rng));
  return w;
}

}  // namespace

const std::array<double, 6>& etd_baseline_mean() { return kMean; }

const etd::Matrix& etd_baseline_covariance() {
  static const etd::Matrix cov = make_covariance();
  return cov;
}

SshLogs gen_ssh_logs(const Scenario& s) {
  s.validate();
  std::mt19937_64 rng(s.seed);
  std::vector<LogEvent> events;
  static const std::vector<std::string> kUsers = {"alice", "bob", "carol",
                                                  "deploy", "svc-backup"};
  static const std::vector<std::string> kTargets = {"root", "admin", "test",
                                                    "oracle", "ubuntu"};

  const double duration_secs = s.duration_hours * 3600.0;
  if (s.normal_login_rate > 0 && duration_secs > 0) {
    std::unordered_set<IpAddress> attackers;
    for (const auto& b : s.attacker_bursts) attackers.insert(b.ip);
    std::vector<IpAddress> pool;
    while (pool.size() < 500) {
      IpAddress ip = random_ip(rng);
      if (!attackers.contains(ip)) pool.push_back(ip);
    }
    std::exponential_distribution<double> gap(s.normal_login_rate / 3600.0);
    std::uniform_int_distribution<std::size_t> pick_ip(0, pool.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_user(0, kUsers.size() - 1);
    std::uniform_int_distribution<int> pick_port(1024, 65535);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (double t = gap(rng); t < duration_secs; t += gap(rng)) {
      LogEvent e;
      e.ts = s.start + static_cast<std::int64_t>(t);
      e.ip = pool[pick_ip(rng)];
      e.failed = u01(rng) < s.normal_failure_fraction;
      e.publickey = !e.failed && u01(rng) < 0.5;
      e.user = kUsers[pick_user(rng)];
      e.port = pick_port(rng);
      events.push_back(std::move(e));
    }
  }

  std::uniform_int_distribution<std::size_t> pick_target(0, kTargets.size() - 1);
  std::uniform_int_distribution<int> pick_port(1024, 65535);
  for (const auto& b : s.attacker_bursts) {
    for (int i = 0; i < b.count; ++i) {
      LogEvent e;
      e.ts = s.start + b.start_secs + i * b.spacing_secs;
      e.ip = b.ip;
      e.failed = true;
      std::size_t target = pick_target(rng);
      e.user = kTargets[target];
      e.invalid_user = target >= 2;
      e.port = pick_port(rng);
      events.push_back(std::move(e));
    }
  }

  for (std::size_t i = 0; i < events.size(); ++i) events[i].seq = i;
  std::stable_sort(events.begin(), events.end(),
                   [](const LogEvent& a, const LogEvent& b) { return a.ts < b.ts; });

  SshLogs out;
  out.lines.reserve(events.size());
  std::map<IpAddress, std::vector<Timestamp>> failures;
  std::uniform_int_distribution<int> pick_pid(1000, 65000);
  for (const auto& e : events) {
    out.lines.push_back(render(e, pick_pid(rng)));
    if (e.failed) failures[e.ip].push_back(e.ts);
  }
  for (auto& [ip, times] : failures) {
    if (window_exceeds(times, s.bf_threshold, s.bf_window_secs)) {
      out.brute_force_ips.push_back(ip);
    }
  }
  return out;
}

EtdStream gen_etd_stream(const Scenario& s) {
  s.validate();
  std::mt19937_64 rng(s.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const etd::Matrix& lower = baseline_cholesky();

  EtdStream out;
  out.rows.reserve(s.rows);
  out.labels.reserve(s.rows);
  out.timestamps.reserve(s.rows);
  for (std::size_t i = 0; i < s.rows; ++i) {
    bool anomaly = u01(rng) < s.anomaly_rate;
    std::array<double, 6> z{};
    for (auto& v : z) v = normal(rng);
    if (anomaly) {
      std::array<double, 6> dir{};
      double norm = 0.0;
      do {
        norm = 0.0;
        for (auto& v : dir) {
          v = normal(rng);
          norm += v * v;
        }
      } while (norm == 0.0);
      norm = std::sqrt(norm);
      for (std::size_t k = 0; k < 6; ++k) z[k] += s.anomaly_shift * dir[k] / norm;
    }
    std::vector<double> x(6);
    for (std::size_t r = 0; r < 6; ++r) {
      double v = kMean[r];
      for (std::size_t c = 0; c <= r; ++c) v += lower(r, c) * z[c];
      if (s.drift && i >= s.drift->after_row) v += s.drift->shift[r];
      x[r] = v;
    }
    out.rows.push_back(from_vector(x));
    out.labels.push_back(anomaly);
    out.timestamps.push_back(s.start + static_cast<std::int64_t>(i) * s.row_spacing_secs);
  }
  return out;
}

std::vector<UrlSample> gen_urls(const Scenario& s) {
  s.validate();
  std::mt19937_64 rng(s.seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  static const std::vector<std::string> kBrands = {"paypal", "google", "apple",
                                                   "microsoft"};
  static const std::vector<std::string> kWords = {"login", "verify", "update",
                                                  "secure", "account"};
  static const std::vector<std::string> kTlds = {"com", "net", "org", "io"};
  auto pick = [&](const std::vector<std::string>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };

  std::vector<UrlSample> out;
  out.reserve(s.url_count);
  for (std::size_t i = 0; i < s.url_count; ++i) {
    UrlSample u;
    u.phishing = u01(rng) < s.phishing_rate;
    if (u.phishing) {
      switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0:
          u.url = "http://secure-" + pick(kWords) + "-" + pick(kWords) + ".com/";
          break;
        case 1: {
          std::string brand = pick(kBrands);
          brand[brand.size() / 2] = '1';
          u.url = "http://" + brand + ".com/" + pick(kWords) + "?id=" +
                  random_word(rng, 4, 8);
          break;
        }
        default:
          u.url = "http://" + pick(kWords) + "." + random_word(rng, 3, 6) + "." +
                  random_word(rng, 3, 6) + "." + random_word(rng, 5, 9) +
                  "-" + pick(kWords) + ".net/%61ccount%2Fverify";
          break;
      }
    } else {
      u.url = "https://www." + random_word(rng, 5, 10) + "." + pick(kTlds) + "/" +
              random_word(rng, 3, 8);
    }
    out.push_back(std::move(u));
  }
  return out;
}

std::vector<std::string> gen_blacklist_domains(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  static const std::vector<std::string> kTlds = {"com", "net", "org", "info", "xyz"};
  std::unordered_set<std::string> seen;
  std::vector<std::string> out;
  out.reserve(n);
  while (out.size() < n) {
    std::string d = random_word(rng, 8, 14) + "." +
                    kTlds[std::uniform_int_distribution<std::size_t>(0, 4)(rng)];
    if (seen.insert(d).second) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace sentinel::harness
