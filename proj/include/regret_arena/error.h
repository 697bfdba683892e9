// Copyright 2026 The Regret Arena Authors.
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

#ifndef REGRET_ARENA_ERROR_H_
#define REGRET_ARENA_ERROR_H_

#include <stdexcept>
#include <string>

namespace regret_arena {

// Base of every error thrown by the library. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user-facing input: unknown game names, malformed learner specs,
// invalid parameters, shape mismatches.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// An action profile with an index outside a player's action range.
class InvalidProfileError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// A game whose utility range is empty, so losses cannot be normalized.
class DegenerateGameError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// A caller broke an operation's precondition (e.g. a loss outside [0, 1]).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Learner methods called out of order (update without a fresh distribution).
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Numerical failure, e.g. the stationary solve did not reach tolerance.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// File system failures: missing files, unwritable paths.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed file contents (truncated JSON, wrong field types).
class ParseError : public IoError {
 public:
  using IoError::IoError;
};

}  // namespace regret_arena

#endif  // REGRET_ARENA_ERROR_H_
