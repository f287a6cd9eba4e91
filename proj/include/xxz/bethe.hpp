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
 * Coordinate Bethe ansatz for the open spin-1/2 XXZ chain with diagonal
 * boundary fields:
 *
 *   H = -1/2 sum_n (X_n X_{n+1} + Y_n Y_{n+1} + delta Z_n Z_{n+1})
 *       -1/2 (h Z_0 + h' Z_{L-1})
 *
 * Scattering phases, the counting function and its fixed-point root solver,
 * energies, the A coefficients, the wavefunction and the classically built
 * Bethe state used as the oracle for the circuit.
 *
 * Conventions. A down spin at site x (0-based, qubit x) enters the plane wave
 * as exp(i kappa (x + 1)). The pair factor is B(k, k') = s(k, k') s(k', -k)
 * with s(k, k') = 1 - 2 delta e^{ik'} + e^{i(k+k')}, and beta(k) carries h'.
 * With these, A obeys
 *
 *   A(.., a, b, ..) / A(.., b, a, ..) = exp(i Theta(a, b))
 *   A(.., -k_j, ..) / A(.., k_j, ..)  = exp(i [k_j (2L+2) + Phi(k_j, h')])
 *                                        * V(k_j; k_{j+1}, ..)
 *
 * for arbitrary real arguments, and f is an exact eigenfunction of H above
 * whenever the roots solve the Bethe equations.
 */
#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace xxz {

using cplx = std::complex<double>;

struct ModelParams {
    double delta = 0.0;
    double h = 0.0;
    double h_prime = 0.0;
    int length = 2;
    int num_down = 0;

    /// Throws ValidationError unless the couplings are finite, L >= 2 and
    /// 0 <= M <= floor(L/2).
    void validate() const;
};

/// Distinct integers J_j in {1, ..., L} labelling one branch of the
/// logarithmic Bethe equations.
class QuantumNumbers {
  public:
    QuantumNumbers() = default;
    /// Throws ValidationError on duplicates or values < 1.
    explicit QuantumNumbers(std::vector<int> values);

    /// Throws ValidationError unless size() == M and every value <= L.
    void validate_for(const ModelParams &params) const;

    [[nodiscard]] std::span<const int> values() const noexcept {
        return values_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] int operator[](std::size_t i) const { return values_[i]; }

    friend bool operator==(const QuantumNumbers &,
                           const QuantumNumbers &) = default;

  private:
    std::vector<int> values_;
};

/// How the l = j term of the counting function is treated while iterating.
enum class IterationScheme {
    /// Every Theta(k, k_l) uses the previous iterate, including l = j.
    Jacobi,
    /// The l = j term is evaluated at the unknown k, which cancels the
    /// Theta(k, -k) self term. Same fixed points, fewer limit cycles.
    SelfConsistent,
};

struct SolverOptions {
    double tol = 1e-12;
    int max_iter = 500;
    IterationScheme scheme = IterationScheme::Jacobi;
};

struct BetheSolution {
    std::vector<double> roots; ///< ascending, each in (0, pi)
    QuantumNumbers quantum_numbers;
    double energy = 0.0;
    int iterations = 0;
    double residual = 0.0; ///< max_j |Z(k_j; {k}) - 2 pi J_j|
};

/// Position m of the underlying root and the sign it carries in one slot.
struct SignedSlot {
    int index = 0;
    int sign = 1;
};

/// One term label P of the wavefunction sum: slot j carries
/// sign_j * roots[index_j]. `roots` is a view; the owner must outlive it.
struct SignedRootSequence {
    std::vector<SignedSlot> entries;
    std::span<const double> roots;

    /// Throws ValidationError unless the indices permute {0, .., M-1} and
    /// every sign is +-1.
    void validate() const;
    [[nodiscard]] std::vector<double> values() const;
    /// sgn(permutation) * (-1)^(number of negations).
    [[nodiscard]] int parity() const;
};

/// Strictly increasing down-spin positions in {0, .., L-1}.
struct SpinConfiguration {
    std::vector<int> positions;

    void validate(int length, int num_down) const;
    /// Computational-basis index: bit x set for every down spin x.
    [[nodiscard]] std::uint64_t basis_index() const;

    friend auto operator<=>(const SpinConfiguration &,
                            const SpinConfiguration &) = default;
};

/// Bethe state built directly from the wavefunction, in lexicographic order
/// of configurations. `norm` is the 2-norm before any normalization.
struct OracleState {
    int length = 0;
    std::vector<SpinConfiguration> configurations;
    std::vector<cplx> amplitudes;
    double norm = 0.0;

    [[nodiscard]] OracleState normalized() const;
    /// Dense 2^L vector in the qubit-x = bit-x convention.
    [[nodiscard]] std::vector<cplx> to_dense() const;
};

// Scattering phases ---------------------------------------------------------

/// 2 atan[delta sin((k-k')/2) / (delta cos((k-k')/2) - cos((k+k')/2))],
/// principal branch of the single-argument arctangent.
[[nodiscard]] double theta(double k, double k_prime, double delta);

/// -2 atan[(field - delta) sin k / (1 + (field - delta) cos k)].
[[nodiscard]] double phi(double k, double field, double delta);

/// Z(k; {k_l}) including the l = j term whenever some k_l equals k.
[[nodiscard]] double counting_function(double k, std::span<const double> roots,
                                       const ModelParams &params);

// Roots and energies --------------------------------------------------------

[[nodiscard]] BetheSolution solve_bethe_roots(const QuantumNumbers &numbers,
                                              const ModelParams &params,
                                              const SolverOptions &options = {});

[[nodiscard]] BetheSolution solve_bethe_roots(const QuantumNumbers &numbers,
                                              const ModelParams &params,
                                              double tol, int max_iter);

/// -1/2 [(L-1) delta + h + h'] + 2 sum_j (delta - cos k_j).
[[nodiscard]] double energy(std::span<const double> roots,
                            const ModelParams &params);

/// max_j |Z(k_j; {k}) - 2 pi J_j|.
[[nodiscard]] double bethe_residual(std::span<const double> roots,
                                    const QuantumNumbers &numbers,
                                    const ModelParams &params);

// Amplitudes and states -----------------------------------------------------

/// A for an arbitrary ordered sequence of real momenta kappa_0..kappa_{M-1}.
[[nodiscard]] cplx amplitude_from_values(std::span<const double> kappa,
                                         const ModelParams &params);

[[nodiscard]] cplx amplitude_A(const SignedRootSequence &seq,
                               const ModelParams &params);

/// V(k_j; k_{j+1}, ..) as a phase angle.
[[nodiscard]] double reflection_phase_sum(std::span<const double> roots,
                                          std::size_t j, double delta);

/// Calls `visit(seq, parity)` for all 2^M M! signed permutations of `roots`.
/// Permutations follow Heap's order and signs a Gray code, so consecutive
/// labels differ by one transposition or one negation and the parity is
/// flipped incrementally.
template <typename Visitor>
void for_each_signed_permutation(std::span<const double> roots,
                                 Visitor &&visit);

struct WavefunctionTerm {
    cplx coefficient;           ///< eps_P A(P)
    std::vector<double> kappa;  ///< signed momenta per slot
};

/// All 2^M M! terms of the wavefunction sum, evaluated once.
[[nodiscard]] std::vector<WavefunctionTerm>
wavefunction_terms(std::span<const double> roots, const ModelParams &params);

[[nodiscard]] cplx wavefunction_f(const SpinConfiguration &x,
                                  const BetheSolution &solution,
                                  const ModelParams &params);

[[nodiscard]] OracleState direct_bethe_state(const BetheSolution &solution,
                                             const ModelParams &params);

/// sum_x |f(x) / A(id)|^2 / [(2^M M!)^2 C(L, M)]: the weight of the all-zero
/// ancilla branch after the preparation circuit.
[[nodiscard]] double
classical_success_probability(const BetheSolution &solution,
                              const ModelParams &params);

// Combinatorics -------------------------------------------------------------

[[nodiscard]] std::uint64_t binomial(int n, int k);
[[nodiscard]] std::uint64_t factorial(int n);

/// All k-subsets of {first, .., first + n - 1}, ascending lexicographic.
[[nodiscard]] std::vector<std::vector<int>> combinations(int n, int k,
                                                         int first = 0);

// ---------------------------------------------------------------------------

template <typename Visitor>
void for_each_signed_permutation(std::span<const double> roots,
                                 Visitor &&visit) {
    const std::size_t m = roots.size();
    SignedRootSequence seq;
    seq.roots = roots;
    seq.entries.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        seq.entries[j] = {static_cast<int>(j), 1};
    }
    const auto visit_signs = [&](int parity) {
        // Gray code over the sign pattern: step g flips the slot given by the
        // lowest set bit of g.
        const std::uint64_t count = std::uint64_t{1} << m;
        for (std::uint64_t g = 0; g < count; ++g) {
            if (g != 0) {
                const auto slot =
                    static_cast<std::size_t>(__builtin_ctzll(g));
                seq.entries[slot].sign = -seq.entries[slot].sign;
                parity = -parity;
            }
            visit(static_cast<const SignedRootSequence &>(seq), parity);
        }
        // The Gray code ends with only the top slot flipped; undo it.
        if (m > 0) {
            seq.entries[m - 1].sign = -seq.entries[m - 1].sign;
        }
    };
    if (m == 0) {
        visit(static_cast<const SignedRootSequence &>(seq), 1);
        return;
    }
    // Iterative Heap's algorithm.
    std::vector<std::size_t> c(m, 0);
    int parity = 1;
    visit_signs(parity);
    std::size_t i = 1;
    while (i < m) {
        if (c[i] < i) {
            const std::size_t other = (i % 2 == 0) ? 0 : c[i];
            std::swap(seq.entries[other], seq.entries[i]);
            parity = -parity;
            visit_signs(parity);
            ++c[i];
            i = 1;
        } else {
            c[i] = 0;
            ++i;
        }
    }
}

} // namespace xxz
