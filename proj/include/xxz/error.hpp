// Copyright 2026 The xxzbethe Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception hierarchy shared by every module. The CLI maps each category to
 * an exit code (see `exit_code_for`).
 */
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace xxz {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
    /// Short machine-readable category, printed by the CLI.
    [[nodiscard]] virtual const char *kind() const noexcept { return "error"; }
};

/// Malformed input: bad indices, duplicate quantum numbers, size mismatch.
class ValidationError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char *kind() const noexcept override {
        return "validation";
    }
};

/// Request exceeds what the dense simulator or matrix builder can hold.
class CapacityError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char *kind() const noexcept override {
        return "capacity";
    }
};

/// Root iteration did not settle within the iteration budget.
class ConvergenceError : public Error {
  public:
    ConvergenceError(const std::string &what, std::vector<double> last_iterate,
                     int iterations)
        : Error(what), last_iterate_(std::move(last_iterate)),
          iterations_(iterations) {}

    [[nodiscard]] const char *kind() const noexcept override {
        return "convergence";
    }
    [[nodiscard]] const std::vector<double> &last_iterate() const noexcept {
        return last_iterate_;
    }
    [[nodiscard]] int iterations() const noexcept { return iterations_; }

  private:
    std::vector<double> last_iterate_;
    int iterations_;
};

/// Two roots collapsed onto each other, or a root hit 0 or pi.
class DegenerateSolutionError : public ConvergenceError {
  public:
    using ConvergenceError::ConvergenceError;
    [[nodiscard]] const char *kind() const noexcept override {
        return "degenerate-solution";
    }
};

/// Theta or Phi evaluated at 0/0.
class SingularPhaseError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char *kind() const noexcept override {
        return "singular-phase";
    }
};

/// Every oracle amplitude vanished.
class NullStateError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char *kind() const noexcept override {
        return "null-state";
    }
};

/// Projection onto an outcome of (numerically) zero probability.
class ImpossibleOutcomeError : public Error {
  public:
    using Error::Error;
    [[nodiscard]] const char *kind() const noexcept override {
        return "impossible-outcome";
    }
};

/// CLI exit code: 1 validation, 2 numerical/convergence, 3 capacity.
[[nodiscard]] inline int exit_code_for(const Error &e) noexcept {
    if (dynamic_cast<const ValidationError *>(&e) != nullptr) {
        return 1;
    }
    if (dynamic_cast<const CapacityError *>(&e) != nullptr) {
        return 3;
    }
    return 2;
}

} // namespace xxz
