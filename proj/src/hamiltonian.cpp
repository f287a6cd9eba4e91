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

#include "xxz/hamiltonian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "xxz/error.hpp"

namespace xxz {

namespace {

void check_couplings(const ModelParams &p) {
    if (!std::isfinite(p.delta) || !std::isfinite(p.h) || !std::isfinite(p.h_prime)) {
        throw ValidationError("couplings must be finite");
    }
    if (p.length < 2) {
        throw ValidationError("chain length must be at least 2");
    }
}

/// sigma^z eigenvalue of qubit q in basis state `index` (|0> = up = +1).
double spin_z(std::uint64_t index, int q) {
    return ((index >> q) & 1U) ? -1.0 : 1.0;
}

double diagonal_entry(std::uint64_t index, const ModelParams &p) {
    double zz = 0.0;
    for (int n = 0; n + 1 < p.length; ++n) {
        zz += spin_z(index, n) * spin_z(index, n + 1);
    }
    return -0.5 * p.delta * zz -
           0.5 * (p.h * spin_z(index, 0) + p.h_prime * spin_z(index, p.length - 1));
}

/// Calls hop(j) for every state j reached from `index` by one XX+YY term;
/// each carries matrix element -1.
template <typename Hop> void for_each_hop(std::uint64_t index, int length, Hop &&hop) {
    for (int n = 0; n + 1 < length; ++n) {
        const std::uint64_t pair = (std::uint64_t{1} << n) | (std::uint64_t{1} << (n + 1));
        const std::uint64_t bits = index & pair;
        if (bits != 0 && bits != pair) {
            hop(index ^ pair);
        }
    }
}

std::vector<double> eigenvalues_of(const Eigen::MatrixXd &m) {
    if (m.rows() == 0) {
        return {};
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error("exact diagonalization failed");
    }
    const auto &ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

void HamiltonianMatrix::apply(std::span<const cplx> in, std::span<cplx> out) const {
    if (in.size() != dimension() || out.size() != dimension()) {
        throw ValidationError("vector dimension differs from the Hamiltonian");
    }
    std::fill(out.begin(), out.end(), cplx{0.0, 0.0});
    for (Eigen::Index col = 0; col < matrix.outerSize(); ++col) {
        const cplx x = in[static_cast<std::size_t>(col)];
        for (Eigen::SparseMatrix<double>::InnerIterator it(matrix, col); it; ++it) {
            out[static_cast<std::size_t>(it.row())] += it.value() * x;
        }
    }
}

HamiltonianMatrix build_hamiltonian(const ModelParams &params) {
    check_couplings(params);
    if (params.length > kMaxHamiltonianLength) {
        throw CapacityError("Hamiltonian limited to L <= " +
                            std::to_string(kMaxHamiltonianLength));
    }
    const std::uint64_t dim = std::uint64_t{1} << params.length;
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(dim) * static_cast<std::size_t>(params.length));
    for (std::uint64_t i = 0; i < dim; ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        entries.emplace_back(row, row, diagonal_entry(i, params));
        for_each_hop(i, params.length, [&](std::uint64_t j) {
            entries.emplace_back(static_cast<Eigen::Index>(j), row, -1.0);
        });
    }
    HamiltonianMatrix h;
    h.params = params;
    h.matrix.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    h.matrix.setFromTriplets(entries.begin(), entries.end());
    return h;
}

double verify_eigenstate(const HamiltonianMatrix &h, std::span<const cplx> v,
                         double energy) {
    std::vector<cplx> hv(v.size());
    h.apply(v, hv);
    double r = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        r += std::norm(hv[i] - energy * v[i]);
    }
    return std::sqrt(r);
}

double verify_eigenstate(const StateVector &state, const ModelParams &params,
                         double energy) {
    if (state.num_qubits() != params.length) {
        throw ValidationError("state size differs from the chain length");
    }
    return verify_eigenstate(build_hamiltonian(params), state.amplitudes(), energy);
}

double verify_eigenstate(const OracleState &state, const ModelParams &params,
                         double energy) {
    if (state.length != params.length) {
        throw ValidationError("oracle state length differs from the chain length");
    }
    const auto dense = state.to_dense();
    return verify_eigenstate(build_hamiltonian(params), dense, energy);
}

std::vector<double> full_spectrum(const ModelParams &params) {
    check_couplings(params);
    if (params.length > kMaxDiagonalizationLength) {
        throw CapacityError("exact diagonalization limited to L <= " +
                            std::to_string(kMaxDiagonalizationLength));
    }
    const Eigen::MatrixXd dense(build_hamiltonian(params).matrix);
    return eigenvalues_of(dense);
}

std::vector<double> sector_spectrum(const ModelParams &params, int num_down) {
    check_couplings(params);
    if (params.length > kMaxDiagonalizationLength) {
        throw CapacityError("exact diagonalization limited to L <= " +
                            std::to_string(kMaxDiagonalizationLength));
    }
    if (num_down < 0 || num_down > params.length) {
        throw ValidationError("sector index out of range");
    }
    std::vector<std::uint64_t> basis;
    std::vector<Eigen::Index> position(std::size_t{1} << params.length, -1);
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << params.length); ++i) {
        if (std::popcount(i) == num_down) {
            position[i] = static_cast<Eigen::Index>(basis.size());
            basis.push_back(i);
        }
    }
    const auto n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const std::uint64_t i = basis[static_cast<std::size_t>(r)];
        block(r, r) = diagonal_entry(i, params);
        for_each_hop(i, params.length, [&](std::uint64_t j) { block(position[j], r) = -1.0; });
    }
    return eigenvalues_of(block);
}

std::vector<int> degeneracy_pattern(std::span<const double> sorted_eigenvalues,
                                    double tolerance) {
    std::vector<int> sizes;
    for (std::size_t i = 0; i < sorted_eigenvalues.size(); ++i) {
        if (i == 0 || sorted_eigenvalues[i] - sorted_eigenvalues[i - 1] > tolerance) {
            sizes.push_back(1);
        } else {
            ++sizes.back();
        }
    }
    return sizes;
}

} // namespace xxz
