// Copyright 2026 The PairArena Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace pairarena {

// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad inputs: unknown models, malformed files, misuse of a session.
// The CLI maps these to exit code 2.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Numerical failures: disconnected comparison graphs, divergent
// likelihoods, non-convergence. The CLI maps these to exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class UnknownModelError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SelfBattleError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class RosterMismatchError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class RosterTooSmallError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class AlreadyFinishedError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class BadRoundTotalError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EmptyProximitySetError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class CorruptSnapshotError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SchemaVersionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DatasetUnavailableError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DisconnectedGraphError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoFiniteMaximizerError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DisconnectedBelowBreakpointError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace pairarena
