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

#include "sentinel/etd/features.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "sentinel/core/errors.hpp"

namespace sentinel::etd {
namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_cell(std::string_view s, std::size_t line_no) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("line " + std::to_string(line_no) + ": bad number \"" +
                     std::string(s) + "\"");
  }
  return v;
}

}  // namespace

FeatureExtractor::FeatureExtractor(const GeoTable* geo, FeatureConfig cfg)
    : geo_(geo), cfg_(cfg) {}

EtdFeatureRow FeatureExtractor::next(const ssh::SshAuthRecord& rec) {
  IpHistory& h = history_[rec.ip];
  const Timestamp horizon = rec.timestamp - cfg_.freq_window_secs;
  while (!h.seen.empty() && h.seen.front() < horizon) h.seen.pop_front();
  h.seen.push_back(rec.timestamp);

  const bool failed = rec.status == ssh::AuthStatus::kFailed;
  h.consecutive_failures = failed ? h.consecutive_failures + 1 : 0;

  EtdFeatureRow row;
  row.hour = hour_of(rec.timestamp);
  row.ip_numeric = ip_to_numeric(rec.ip);
  row.status = failed ? 0.0 : 1.0;
  row.failed_attempts = h.consecutive_failures;
  row.freq = static_cast<double>(h.seen.size());
  std::optional<double> dist;
  if (geo_ != nullptr) dist = geo_->distance_km(rec.ip);
  if (!dist) {
    ++missing_geo_;
    dist = cfg_.geo_impute;
  }
  row.geo_distance = *dist;
  return row;
}

std::vector<EtdFeatureRow> extract_features(
    std::span<const ssh::SshAuthRecord> records, const GeoTable& geo,
    std::int64_t freq_window_secs, double geo_impute,
    std::size_t* missing_geo) {
  FeatureExtractor fx(&geo, FeatureConfig{freq_window_secs, geo_impute});
  std::vector<EtdFeatureRow> rows;
  rows.reserve(records.size());
  for (const auto& rec : records) rows.push_back(fx.next(rec));
  if (missing_geo != nullptr) *missing_geo = fx.missing_geo();
  return rows;
}

std::vector<std::string> feature_names(bool with_optional) {
  const std::size_t n = with_optional ? 8 : 6;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.emplace_back(kFeatureNames[i]);
  return names;
}

Dataset read_dataset_csv(std::istream& in) {
  Dataset ds;
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty dataset");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = split_commas(line);
  bool with_ts = false;
  if (!header.empty() && header.front() == "timestamp") {
    with_ts = true;
    header.erase(header.begin());
  }
  const auto six = feature_names(false);
  const auto eight = feature_names(true);
  const auto matches = [&](const std::vector<std::string>& names) {
    if (header.size() != names.size()) return false;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (header[i] != names[i]) return false;
    }
    return true;
  };
  if (matches(eight)) {
    ds.has_optional = true;
  } else if (!matches(six)) {
    throw ParseError("unexpected dataset header \"" + line + "\"");
  }
  const std::size_t width = (ds.has_optional ? 8 : 6) + (with_ts ? 1 : 0);

  std::size_t line_no = 1;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != width) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(width) + " columns, got " +
                       std::to_string(cells.size()));
    }
    std::size_t first = 0;
    if (with_ts) {
      ds.timestamps.push_back(parse_iso8601(cells[0]));
      first = 1;
    }
    values.clear();
    for (std::size_t i = first; i < cells.size(); ++i) {
      values.push_back(parse_cell(cells[i], line_no));
    }
    ds.rows.push_back(from_vector(values));
  }
  return ds;
}

Dataset read_dataset_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset " + path.string());
  return read_dataset_csv(in);
}

void write_dataset_csv(std::ostream& out, std::span<const EtdFeatureRow> rows,
                       std::span<const Timestamp> timestamps) {
  const bool with_optional = !rows.empty() && has_optional_features(rows[0]);
  const bool with_ts = !timestamps.empty();
  if (with_ts && timestamps.size() != rows.size()) {
    throw ValidationError("timestamps and rows differ in length");
  }
  if (with_ts) out << "timestamp,";
  const auto names = feature_names(with_optional);
  for (std::size_t i = 0; i < names.size(); ++i) {
    out << (i ? "," : "") << names[i];
  }
  out << '\n';
  std::ostringstream cell;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (with_ts) out << format_iso8601(timestamps[r]) << ',';
    const auto v = to_vector(rows[r]);
    if (v.size() != names.size()) {
      throw ValidationError("optional feature columns are not homogeneous");
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      cell.str("");
      cell << std::setprecision(17) << v[i];
      out << (i ? "," : "") << cell.str();
    }
    out << '\n';
  }
}

Matrix to_matrix(std::span<const EtdFeatureRow> rows) {
  if (rows.empty()) return Matrix();
  const bool with_optional = has_optional_features(rows[0]);
  const std::size_t cols = with_optional ? 8 : 6;
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (has_optional_features(rows[r]) != with_optional) {
      throw ValidationError(
          "optional feature columns must be present on all rows or none");
    }
    const auto v = to_vector(rows[r]);
    std::copy(v.begin(), v.end(), m.row(r).begin());
  }
  return m;
}

}  // namespace sentinel::etd
