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
 * Spectrum sweeps: every M-subset of quantum numbers, solved, prepared by
 * the circuit and checked, one row per converged subset.
 */
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "xxz/bethe.hpp"
#include "xxz/circuit.hpp"

namespace xxz {

struct SkippedSubset {
    QuantumNumbers quantum_numbers;
    std::string reason;
};

struct SweepTable {
    ModelParams params;
    SolverOptions options;
    std::vector<RunReport> rows; ///< ascending energy
    std::vector<SkippedSubset> skipped;
};

/// Subsets are visited in ascending lexicographic order; non-convergent ones
/// land in `skipped`. ConvergenceError if no subset converges.
[[nodiscard]] SweepTable sweep_spectrum(const ModelParams &params,
                                        const SolverOptions &options = {});

/// One full pipeline run for a single set of quantum numbers.
[[nodiscard]] RunReport prepare_state(const QuantumNumbers &numbers,
                                      const ModelParams &params,
                                      const SolverOptions &options = {});

inline constexpr const char *kSweepCsvHeader =
    "J_set,k_roots,energy,success_prob,eigen_residual,oracle_fidelity,iterations";

/// CSV body with the header above; doubles at 17 significant digits, set
/// members and roots joined by ';', LF line endings.
void write_sweep_csv(std::ostream &os, const SweepTable &table);

/// Smallest success probability over the rows; ValidationError when empty.
[[nodiscard]] double min_success_probability(const SweepTable &table);

} // namespace xxz
