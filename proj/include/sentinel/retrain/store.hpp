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

#ifndef SENTINEL_RETRAIN_STORE_HPP_
#define SENTINEL_RETRAIN_STORE_HPP_

#include <filesystem>
#include <optional>
#include <string>

#include "sentinel/etd/artifact.hpp"

namespace sentinel::retrain {

// Writes `<dir>/etd_model_<version>.json` through a temporary file and an
// atomic rename. Throws IoError.
std::filesystem::path persist_artifact(const etd::EtdModelArtifact& a,
                                       const std::filesystem::path& dir);

// Throws IoError or CorruptArtifactError.
etd::EtdModelArtifact load_artifact(const std::filesystem::path& path);

std::filesystem::path artifact_path(const std::filesystem::path& dir,
                                    const std::string& version);

// `<dir>/current` holds the active version; replaced atomically.
void set_current(const std::filesystem::path& dir, const std::string& version);
std::optional<std::string> read_current(const std::filesystem::path& dir);

// Loads the artifact named by `current`, if any.
std::optional<etd::EtdModelArtifact> load_current(
    const std::filesystem::path& dir);

}  // namespace sentinel::retrain

#endif  // SENTINEL_RETRAIN_STORE_HPP_
