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

#ifndef SENTINEL_CORE_ERRORS_HPP_
#define SENTINEL_CORE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sentinel {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

class ScoringError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class CorruptArtifactError : public Error {
 public:
  using Error::Error;
};

class NoModelError : public Error {
 public:
  NoModelError() : Error("no model loaded") {}
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sentinel

#endif  // SENTINEL_CORE_ERRORS_HPP_
