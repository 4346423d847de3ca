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

#include "sentinel/retrain/registry.hpp"

#include "sentinel/core/errors.hpp"

namespace sentinel::retrain {

ModelRegistry::ArtifactPtr ModelRegistry::snapshot() const {
  std::lock_guard lock(mu_);
  return active_;
}

std::optional<std::string> ModelRegistry::version() const {
  auto a = snapshot();
  if (!a) return std::nullopt;
  return a->version;
}

bool ModelRegistry::swap(ArtifactPtr candidate) {
  if (!candidate) return false;
  ArtifactPtr retired;
  {
    std::lock_guard lock(mu_);
    if (active_ && active_->version == candidate->version) return false;
    retired = std::move(active_);
    active_ = std::move(candidate);
  }
  // `retired` is released outside the lock.
  return true;
}

etd::ScoreResult ModelRegistry::score(const EtdFeatureRow& row) const {
  const ArtifactPtr a = snapshot();
  if (!a) throw NoModelError();
  return etd::score_event(*a, row);
}

}  // namespace sentinel::retrain
