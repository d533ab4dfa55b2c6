// Copyright 2026 The CCM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CCM_ERROR_H_
#define CCM_ERROR_H_

#include <stdexcept>
#include <string>

namespace ccm {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or malformed input files.
class InputError : public Error {
 public:
  using Error::Error;
};

// A graph file that produced no valid edge.
class EmptyGraphError : public InputError {
 public:
  using InputError::InputError;
};

// Unknown concept id or surface.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration values or inconsistent artifacts.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Wraps an upstream error with the name of the pipeline phase that raised it.
class PhaseError : public Error {
 public:
  PhaseError(std::string phase, const std::string& message, bool config)
      : Error(phase + ": " + message), phase_(std::move(phase)), config_(config) {}

  const std::string& phase() const { return phase_; }
  // True when the root cause was a usage or configuration problem.
  bool is_config_error() const { return config_; }

 private:
  std::string phase_;
  bool config_;
};

}  // namespace ccm

#endif  // CCM_ERROR_H_
