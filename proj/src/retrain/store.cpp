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

#include "sentinel/retrain/store.hpp"

#include <unistd.h>

#include <atomic>
#include <fstream>
#include <sstream>

#include "sentinel/core/errors.hpp"

namespace sentinel::retrain {
namespace {

namespace fs = std::filesystem;

std::atomic<unsigned> g_tmp_counter{0};

void atomic_write(const fs::path& target, const std::string& content) {
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  if (ec) {
    throw IoError("cannot create " + target.parent_path().string() + ": " +
                  ec.message());
  }
  const fs::path tmp =
      target.parent_path() /
      ("." + target.filename().string() + ".tmp." +
       std::to_string(::getpid()) + "." + std::to_string(g_tmp_counter++));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("short write to " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw IoError("cannot rename into " + target.string() + ": " +
                  ec.message());
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

fs::path artifact_path(const fs::path& dir, const std::string& version) {
  return dir / ("etd_model_" + version + ".json");
}

fs::path persist_artifact(const etd::EtdModelArtifact& a, const fs::path& dir) {
  const fs::path target = artifact_path(dir, a.version);
  atomic_write(target, etd::artifact_to_json(a));
  return target;
}

etd::EtdModelArtifact load_artifact(const fs::path& path) {
  return etd::artifact_from_json(read_file(path));
}

void set_current(const fs::path& dir, const std::string& version) {
  atomic_write(dir / "current", version + "\n");
}

std::optional<std::string> read_current(const fs::path& dir) {
  std::error_code ec;
  if (!fs::exists(dir / "current", ec)) return std::nullopt;
  std::string v = read_file(dir / "current");
  while (!v.empty() && (v.back() == '\n' || v.back() == '\r' || v.back() == ' ')) {
    v.pop_back();
  }
  if (v.empty()) return std::nullopt;
  return v;
}

std::optional<etd::EtdModelArtifact> load_current(const fs::path& dir) {
  const auto version = read_current(dir);
  if (!version) return std::nullopt;
  auto a = load_artifact(artifact_path(dir, *version));
  if (a.version != *version) {
    throw CorruptArtifactError("current points at " + *version +
                               " but the file holds " + a.version);
  }
  return a;
}

}  // namespace sentinel::retrain
