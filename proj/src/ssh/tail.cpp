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

#include "sentinel/ssh/tail.hpp"

#include <sys/stat.h>

#include <cstdio>
#include <fstream>

namespace sentinel::ssh {

FileTailer::FileTailer(std::filesystem::path path, bool from_start)
    : path_(std::move(path)) {
  if (!from_start) {
    std::error_code ec;
    offset_ = std::filesystem::file_size(path_, ec);
    if (ec) offset_ = 0;
  }
}

std::vector<std::string> FileTailer::poll() {
  std::vector<std::string> lines;
  struct stat st {};
  if (::stat(path_.c_str(), &st) != 0) {
    health_ = Health::kDegraded;
    message_ = "source missing: " + path_.string();
    return lines;
  }
  const auto size = static_cast<std::uintmax_t>(st.st_size);
  const auto inode = static_cast<std::uintmax_t>(st.st_ino);
  if ((inode_ != 0 && inode != inode_) || size < offset_) {
    offset_ = 0;
    partial_.clear();
  }
  inode_ = inode;

  std::ifstream in(path_, std::ios::binary);
  if (!in) {
    health_ = Health::kDegraded;
    message_ = "source unreadable: " + path_.string();
    return lines;
  }
  health_ = Health::kOk;
  message_.clear();
  if (size == offset_) return lines;

  in.seekg(static_cast<std::streamoff>(offset_));
  std::string chunk(size - offset_, '\0');
  in.read(chunk.data(), static_cast<std::streamsize>(chunk.size()));
  chunk.resize(static_cast<std::size_t>(in.gcount()));
  offset_ += chunk.size();

  std::string buffer = std::move(partial_);
  buffer += chunk;
  partial_.clear();
  std::size_t start = 0;
  while (true) {
    const std::size_t nl = buffer.find('\n', start);
    if (nl == std::string::npos) break;
    std::string line = buffer.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = nl + 1;
  }
  partial_ = buffer.substr(start);
  return lines;
}

CommandSource::CommandSource(std::string command)
    : command_(std::move(command)) {}

std::vector<std::string> CommandSource::poll() {
  std::vector<std::string> fresh;
  FILE* pipe = ::popen(command_.c_str(), "r");
  if (pipe == nullptr) {
    health_ = Health::kDegraded;
    message_ = "cannot run: " + command_;
    return fresh;
  }
  std::string output;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, n);
  const int status = ::pclose(pipe);
  if (status != 0) {
    health_ = Health::kDegraded;
    message_ = "command exited with status " + std::to_string(status);
  } else {
    health_ = Health::kOk;
    message_.clear();
  }

  std::unordered_set<std::string> current;
  std::size_t start = 0;
  while (start < output.size()) {
    std::size_t nl = output.find('\n', start);
    if (nl == std::string::npos) nl = output.size();
    std::string line = output.substr(start, nl - start);
    start = nl + 1;
    if (line.empty()) continue;
    if (!previous_.contains(line)) fresh.push_back(line);
    current.insert(std::move(line));
  }
  previous_ = std::move(current);
  return fresh;
}

std::unique_ptr<LineSource> make_line_source(const std::string& spec) {
  constexpr std::string_view kCmd = "cmd:";
  if (spec.rfind(kCmd, 0) == 0) {
    return std::make_unique<CommandSource>(spec.substr(kCmd.size()));
  }
  return std::make_unique<FileTailer>(spec);
}

}  // namespace sentinel::ssh
