// Copyright 2026 The acmag Authors
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace acmag {

// Precondition and argument failures are reported with std::invalid_argument.
// Everything below is a failure of the numerics themselves.

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Fisher matrix is singular to double precision, so no unbiased joint
/// estimator of (B, omega) exists.
class SingularFisherError : public NumericalError {
 public:
  explicit SingularFisherError(const std::string& detail)
      : NumericalError("joint estimation unattainable: singular QFIM (" + detail + ")") {}
};

class SingularJacobianError : public NumericalError {
 public:
  explicit SingularJacobianError(double condition)
      : NumericalError("singular signal Jacobian (condition number " + std::to_string(condition) + ")"),
        condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

/// Raised when a refinement check (step halving, unitarity) misses its tolerance.
class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ZeroProbabilityError : public NumericalError {
 public:
  ZeroProbabilityError(std::size_t outcome, double value)
      : NumericalError("non-positive probability " + std::to_string(value) + " for outcome " +
                       std::to_string(outcome)),
        outcome_(outcome) {}
  std::size_t outcome() const { return outcome_; }

 private:
  std::size_t outcome_;
};

class DivergenceError : public NumericalError {
 public:
  DivergenceError(int round, const std::string& detail)
      : NumericalError("adaptive estimate diverged in round " + std::to_string(round) + ": " + detail),
        round_(round) {}
  int round() const { return round_; }

 private:
  int round_;
};

}  // namespace acmag
