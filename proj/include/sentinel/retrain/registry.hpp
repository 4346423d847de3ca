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

#ifndef SENTINEL_RETRAIN_REGISTRY_HPP_
#define SENTINEL_RETRAIN_REGISTRY_HPP_

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "sentinel/etd/artifact.hpp"

namespace sentinel::retrain {

// Holds the active artifact. Readers take a snapshot (shared ownership), so
// a swap never disturbs a score already in progress.
class ModelRegistry {
 public:
  using ArtifactPtr = std::shared_ptr<const etd::EtdModelArtifact>;

  ArtifactPtr snapshot() const;
  std::optional<std::string> version() const;

  // Returns false (no-op) when `candidate` has the active version.
  bool swap(ArtifactPtr candidate);

  // Throws NoModelError before the first swap.
  etd::ScoreResult score(const EtdFeatureRow& row) const;

 private:
  mutable std::mutex mu_;
  ArtifactPtr active_;
};

}  // namespace sentinel::retrain

#endif  // SENTINEL_RETRAIN_REGISTRY_HPP_
