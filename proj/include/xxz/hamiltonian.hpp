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
 * Open XXZ Hamiltonian in the computational basis (|0> = spin up, qubit x =
 * bit x) and exact-diagonalization helpers.
 */
#pragma once

#include <Eigen/SparseCore>
#include <span>
#include <vector>

#include "xxz/bethe.hpp"
#include "xxz/statevector.hpp"

namespace xxz {

inline constexpr int kMaxHamiltonianLength = 14;
inline constexpr int kMaxDiagonalizationLength = 10;

struct HamiltonianMatrix {
    ModelParams params;
    Eigen::SparseMatrix<double> matrix; ///< 2^L x 2^L, real symmetric

    [[nodiscard]] std::uint64_t dimension() const noexcept {
        return static_cast<std::uint64_t>(matrix.rows());
    }
    /// out = H in
    void apply(std::span<const cplx> in, std::span<cplx> out) const;
};

/// CapacityError for L > kMaxHamiltonianLength. Only the couplings and L
/// of `params` are used.
[[nodiscard]] HamiltonianMatrix build_hamiltonian(const ModelParams &params);

/// ||H v - E v||_2 for a vector of dimension 2^L.
[[nodiscard]] double verify_eigenstate(const HamiltonianMatrix &h,
                                       std::span<const cplx> v, double energy);
[[nodiscard]] double verify_eigenstate(const StateVector &state,
                                       const ModelParams &params, double energy);
[[nodiscard]] double verify_eigenstate(const OracleState &state,
                                       const ModelParams &params, double energy);

/// All 2^L eigenvalues, ascending. CapacityError for L > 10.
[[nodiscard]] std::vector<double> full_spectrum(const ModelParams &params);

/// Eigenvalues of the block with `num_down` down spins, ascending.
[[nodiscard]] std::vector<double> sector_spectrum(const ModelParams &params,
                                                  int num_down);

/// Sizes of runs of ascending eigenvalues whose neighbours differ by at most
/// `tolerance`.
[[nodiscard]] std::vector<int>
degeneracy_pattern(std::span<const double> sorted_eigenvalues, double tolerance);

} // namespace xxz
