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

#include <gtest/gtest.h>

#include <set>

#include "support/oracles.hpp"
#include "xxz/circuit.hpp"
#include "xxz/error.hpp"
#include "xxz/hamiltonian.hpp"

namespace {

using xxz::cplx;
using xxz::StateVector;

const xxz::ModelParams kDefault{0.5, 0.1, 0.3, 4, 2};

oracle::Couplings couplings(const xxz::ModelParams &p) {
    return {p.delta, p.h, p.h_prime, p.length};
}

double choose(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

double factorial(int n) {
    return n <= 1 ? 1.0 : n * factorial(n - 1);
}

void run_gates(StateVector &s, const std::vector<xxz::Gate> &gates) {
    for (const auto &g : gates) {
        xxz::apply_gate(s, g);
    }
}

/// Basis index with `ones` set.
std::uint64_t index_of(std::initializer_list<int> ones) {
    std::uint64_t i = 0;
    for (int q : ones) {
        i |= std::uint64_t{1} << q;
    }
    return i;
}

/// Decodes label registers into the ordered signed momenta they name;
/// empty when some subregister is not one-hot.
std::vector<double> decode_label(std::uint64_t index, const xxz::QubitLayout &layout,
                                 const std::vector<double> &roots, std::vector<int> &order) {
    const int m = layout.num_down;
    std::vector<double> kappa;
    order.clear();
    for (int j = 0; j < m; ++j) {
        int value = -1;
        for (int v = 0; v < m; ++v) {
            if ((index >> layout.hot[j][v]) & 1U) {
                if (value >= 0) {
                    return {};
                }
                value = v;
            }
        }
        if (value < 0) {
            return {};
        }
        order.push_back(value);
        const bool negated = ((index >> layout.reflection[j]) & 1U) != 0;
        kappa.push_back(negated ? -roots[value] : roots[value]);
    }
    return kappa;
}

int permutation_sign(const std::vector<int> &order) {
    int inversions = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            inversions += order[i] > order[j] ? 1 : 0;
        }
    }
    return inversions % 2 == 0 ? 1 : -1;
}

TEST(Layout, QubitCounts) {
    EXPECT_EQ(xxz::make_layout(kDefault).total(), 12);
    EXPECT_EQ(xxz::make_layout({0.5, 0.1, 0.3, 6, 3}).total(), 21);
    for (int l = 2; l <= 10; ++l) {
        EXPECT_EQ(xxz::make_layout({0.5, 0.1, 0.3, l, 0}).total(), l);
    }
    const auto with_work = xxz::make_layout(kDefault, true);
    EXPECT_EQ(with_work.total(), 14);
    EXPECT_EQ(with_work.work.size(), 2U);
}

TEST(Layout, RegistersAreDisjointAndContiguous) {
    const auto layout = xxz::make_layout({0.5, 0.1, 0.3, 6, 3});
    std::set<int> seen(layout.system.begin(), layout.system.end());
    for (int q : layout.ancilla_qubits()) {
        EXPECT_TRUE(seen.insert(q).second);
    }
    EXPECT_EQ(static_cast<int>(seen.size()), layout.total());
    EXPECT_EQ(*seen.rbegin(), layout.total() - 1);
    EXPECT_EQ(layout.hot[1][0], 6 + 4);
    EXPECT_EQ(layout.reflection[2], 6 + 2 * 4 + 3);
}

TEST(Layout, CapacityGuard) {
    EXPECT_THROW((void)xxz::make_layout({0.5, 0.1, 0.3, 12, 4}), xxz::CapacityError);
}

TEST(Dicke, EqualWeightOnEveryConfiguration) {
    for (int l = 1; l <= 8; ++l) {
        for (int m = 0; m <= std::min(l, 4); ++m) {
            StateVector s(l);
            run_gates(s, xxz::build_dicke_prep(l, m));
            const double w = 1.0 / std::sqrt(choose(l, m));
            for (std::uint64_t i = 0; i < s.dimension(); ++i) {
                const double want = std::popcount(i) == m ? w : 0.0;
                ASSERT_LT(std::abs(s[i] - want), 1e-12) << "L=" << l << " M=" << m;
            }
        }
    }
}

TEST(Dicke, ThreeSitesOneDown) {
    StateVector s(3);
    run_gates(s, xxz::build_dicke_prep(3, 1));
    const double w = 1.0 / std::sqrt(3.0);
    EXPECT_NEAR(s[0b001].real(), w, 1e-12);
    EXPECT_NEAR(s[0b010].real(), w, 1e-12);
    EXPECT_NEAR(s[0b100].real(), w, 1e-12);
}

TEST(Dicke, OnArbitrarySystemQubits) {
    const std::vector<int> system{4, 1, 3};
    StateVector s(5);
    run_gates(s, xxz::build_dicke_prep(system, 2));
    const double w = 1.0 / std::sqrt(3.0);
    EXPECT_NEAR(std::abs(s[index_of({4, 1})]), w, 1e-12);
    EXPECT_NEAR(std::abs(s[index_of({1, 3})]), w, 1e-12);
    EXPECT_NEAR(std::abs(s[index_of({4, 3})]), w, 1e-12);
}

TEST(LabelPrep, UniformWithoutPhases) {
    for (int m = 1; m <= 3; ++m) {
        const xxz::ModelParams p{0.5, 0.1, 0.3, 2 * m, m};
        const auto layout = xxz::make_layout(p);
        xxz::BetheSolution sol;
        sol.roots = oracle::Draw(m).momenta(m);
        std::sort(sol.roots.begin(), sol.roots.end());
        StateVector s(layout.total());
        run_gates(s, xxz::build_label_prep(sol, p, layout, false));
        const double terms = std::pow(2.0, m) * factorial(m);
        std::set<std::vector<int>> labels;
        int nonzero = 0;
        for (std::uint64_t i = 0; i < s.dimension(); ++i) {
            if (std::abs(s[i]) < 1e-12) {
                continue;
            }
            ++nonzero;
            EXPECT_NEAR(s[i].real(), 1.0 / std::sqrt(terms), 1e-12);
            EXPECT_NEAR(s[i].imag(), 0.0, 1e-12);
            std::vector<int> order;
            ASSERT_FALSE(decode_label(i, layout, sol.roots, order).empty());
            auto key = order;
            for (int r : layout.reflection) {
                key.push_back(static_cast<int>((i >> r) & 1U));
            }
            labels.insert(key);
        }
        EXPECT_EQ(nonzero, static_cast<int>(terms));
        EXPECT_EQ(labels.size(), static_cast<std::size_t>(terms));
    }
}

// With phases, label P carries eps_P A(P) / A(id) / sqrt(2^M M!).
TEST(LabelPrep, PhasesReproduceAmplitudeRatios) {
    oracle::Draw draw(77);
    for (int trial = 0; trial < 12; ++trial) {
        const int m = 1 + trial % 3;
        const xxz::ModelParams p{draw.uniform(-0.9, 0.9), draw.uniform(-0.9, 0.9),
                                 draw.uniform(-0.9, 0.9), 2 * m, m};
        const auto layout = xxz::make_layout(p);
        xxz::BetheSolution sol;
        sol.roots = draw.momenta(m);
        const auto c = couplings(p);
        const cplx identity = oracle::amplitude(sol.roots, c);
        const double norm = std::sqrt(std::pow(2.0, m) * factorial(m));

        StateVector s(layout.total());
        run_gates(s, xxz::build_label_prep(sol, p, layout, true));
        int nonzero = 0;
        for (std::uint64_t i = 0; i < s.dimension(); ++i) {
            if (std::abs(s[i]) < 1e-12) {
                continue;
            }
            ++nonzero;
            std::vector<int> order;
            const auto kappa = decode_label(i, layout, sol.roots, order);
            ASSERT_FALSE(kappa.empty());
            int sign = permutation_sign(order);
            for (double k : kappa) {
                sign *= k < 0 ? -1 : 1;
            }
            const cplx want = static_cast<double>(sign) * oracle::amplitude(kappa, c) /
                              identity / norm;
            ASSERT_LT(std::abs(s[i] - want), 1e-10) << "M=" << m;
        }
        EXPECT_EQ(nonzero, static_cast<int>(norm * norm + 0.5));
    }
}

TEST(LabelPrep, InverseRestoresZero) {
    const xxz::ModelParams p{0.5, 0.1, 0.3, 6, 3};
    const auto layout = xxz::make_layout(p);
    xxz::BetheSolution sol;
    sol.roots = {0.4, 1.1, 2.3};
    auto prep = xxz::build_label_prep(sol, p, layout, false);
    const auto undo = xxz::inverse(prep);
    prep.insert(prep.end(), undo.begin(), undo.end());
    StateVector s(layout.total());
    run_gates(s, prep);
    EXPECT_NEAR(std::abs(s[0]), 1.0, 1e-12);
}

// Each (configuration, label) branch picks up exp(i sum_j kappa_j (x_j + 1))
// and every faucet ends closed.
TEST(FaucetStage, KicksBackPlaneWavePhase) {
    const xxz::ModelParams p{0.5, 0.1, 0.3, 5, 2};
    const auto layout = xxz::make_layout(p);
    xxz::BetheSolution sol;
    sol.roots = {0.7, 1.9};
    const auto faucet = xxz::build_faucet_stage(sol, p, layout);
    for (const auto &x : xxz::combinations(5, 2)) {
        for (int swap = 0; swap < 2; ++swap) {
            for (int signs = 0; signs < 4; ++signs) {
                const int v0 = swap;
                const int v1 = 1 - swap;
                std::vector<int> ones{x[0], x[1], layout.hot[0][v0], layout.hot[1][v1]};
                if (signs & 1) {
                    ones.push_back(layout.reflection[0]);
                }
                if (signs & 2) {
                    ones.push_back(layout.reflection[1]);
                }
                std::uint64_t start = 0;
                for (int q : ones) {
                    start |= std::uint64_t{1} << q;
                }
                std::vector<cplx> amps(std::size_t{1} << layout.total(), 0.0);
                amps[start] = 1.0;
                StateVector s(layout.total(), std::move(amps));
                run_gates(s, faucet);
                const double k0 = (signs & 1) ? -sol.roots[v0] : sol.roots[v0];
                const double k1 = (signs & 2) ? -sol.roots[v1] : sol.roots[v1];
                const cplx want = std::exp(cplx{0.0, k0 * (x[0] + 1) + k1 * (x[1] + 1)});
                ASSERT_LT(std::abs(s[start] - want), 1e-12)
                    << "x=" << x[0] << "," << x[1] << " signs=" << signs;
            }
        }
    }
}

TEST(Assembly, FourBarriersFiveRegions) {
    const auto sol = xxz::solve_bethe_roots(xxz::QuantumNumbers({2, 3}), kDefault);
    const auto c = xxz::assemble_full(sol, kDefault);
    ASSERT_EQ(c.barriers.size(), 4U);
    EXPECT_EQ(c.barriers[0].name, "step2");
    EXPECT_EQ(c.barriers[1].name, "step3");
    EXPECT_EQ(c.barriers[2].name, "step4");
    EXPECT_EQ(c.barriers[3].name, "step5");
    const auto regions = c.regions();
    ASSERT_EQ(regions.size(), 5U);
    EXPECT_TRUE(regions.back().empty());
    std::size_t count = 0;
    for (const auto &r : regions) {
        count += r.size();
    }
    EXPECT_EQ(count, c.gates.size());
}

// Projected system amplitudes equal f(x) / [A(id) 2^M M! sqrt C(L, M)].
TEST(Assembly, SuccessBranchHoldsScaledWavefunction) {
    const auto sol = xxz::solve_bethe_roots(xxz::QuantumNumbers({2, 3}), kDefault);
    const auto c = xxz::assemble_full(sol, kDefault);
    StateVector s(c.num_qubits());
    xxz::run_circuit(s, c);
    const auto oc = couplings(kDefault);
    const cplx identity = oracle::amplitude(sol.roots, oc);
    const double scale = 4.0 * 2.0 * std::sqrt(choose(4, 2));
    for (std::uint64_t i = 0; i < 16; ++i) {
        cplx want = 0.0;
        if (std::popcount(i) == 2) {
            std::vector<int> x;
            for (int b = 0; b < 4; ++b) {
                if ((i >> b) & 1U) {
                    x.push_back(b);
                }
            }
            want = oracle::wavefunction(x, sol.roots, oc) / identity / scale;
        }
        EXPECT_LT(std::abs(s[i] - want), 1e-12) << i;
    }
}

TEST(Assembly, PreparesEigenstatesForSmallChains) {
    for (int l = 2; l <= 6; ++l) {
        for (int m = 0; m <= l / 2; ++m) {
            const xxz::ModelParams p{0.5, 0.1, 0.3, l, m};
            for (const auto &j : xxz::combinations(l, m, 1)) {
                xxz::BetheSolution sol;
                try {
                    sol = xxz::solve_bethe_roots(xxz::QuantumNumbers(j), p);
                } catch (const xxz::ConvergenceError &) {
                    continue;
                }
                const auto report = xxz::run_and_project(xxz::assemble_full(sol, p), sol, p);
                SCOPED_TRACE("L=" + std::to_string(l) + " M=" + std::to_string(m));
                EXPECT_LT(report.eigen_residual, 1e-8);
                EXPECT_NEAR(report.oracle_fidelity, 1.0, 1e-10);
                EXPECT_NEAR(report.success_probability,
                            xxz::classical_success_probability(sol, p), 1e-12);
                const auto v = oracle::bethe_vector(sol.roots, couplings(p));
                EXPECT_LT(oracle::residual(v, sol.energy, couplings(p)), 1e-8);
            }
        }
    }
}

TEST(Assembly, RejectsMismatchedSolution) {
    const auto sol = xxz::solve_bethe_roots(xxz::QuantumNumbers({2, 3}), kDefault);
    const auto c = xxz::assemble_full(sol, kDefault);
    const xxz::ModelParams other{0.5, 0.1, 0.3, 5, 2};
    EXPECT_THROW((void)xxz::run_and_project(c, sol, other), xxz::ValidationError);
    xxz::BetheSolution short_sol = sol;
    short_sol.roots.pop_back();
    EXPECT_THROW((void)xxz::build_faucet_stage(short_sol, kDefault, c.layout),
                 xxz::ValidationError);
}

TEST(Assembly, NoDownSpinsIsTheReferenceState) {
    const xxz::ModelParams p{0.5, 0.1, 0.3, 5, 0};
    const auto sol = xxz::solve_bethe_roots(xxz::QuantumNumbers(std::vector<int>{}), p);
    const auto report = xxz::run_and_project(xxz::assemble_full(sol, p), sol, p);
    EXPECT_DOUBLE_EQ(report.success_probability, 1.0);
    EXPECT_NEAR(std::abs(report.system_state[0]), 1.0, 1e-15);
}

} // namespace
