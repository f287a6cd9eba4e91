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

#include "xxz/circuit.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

#include "xxz/error.hpp"
#include "xxz/hamiltonian.hpp"

namespace xxz {

namespace {

constexpr double pi = std::numbers::pi;

// Any surviving faucet weight above this means the shut-off cascade is wrong.
constexpr double kFaucetLeakTolerance = 1e-10;

} // namespace

// -- layout ------------------------------------------------------------------

int QubitLayout::total() const noexcept {
    return length + num_down * num_down + 2 * num_down +
           static_cast<int>(work.size());
}

std::vector<int> QubitLayout::label_qubits() const {
    std::vector<int> out;
    for (std::size_t j = 0; j < hot.size(); ++j) {
        out.insert(out.end(), hot[j].begin(), hot[j].end());
        out.push_back(reflection[j]);
    }
    return out;
}

std::vector<int> QubitLayout::ancilla_qubits() const {
    auto out = label_qubits();
    out.insert(out.end(), faucet.begin(), faucet.end());
    return out;
}

QubitLayout make_layout(const ModelParams &params, bool with_work_qubits) {
    params.validate();
    const int l = params.length;
    const int m = params.num_down;
    const int simulated = l + m * m + 2 * m;
    if (simulated > kMaxQubits) {
        throw CapacityError("layout needs " + std::to_string(simulated) +
                            " qubits, simulator holds " +
                            std::to_string(kMaxQubits));
    }
    QubitLayout layout;
    layout.length = l;
    layout.num_down = m;
    int next = 0;
    for (int x = 0; x < l; ++x) {
        layout.system.push_back(next++);
    }
    layout.hot.resize(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        for (int v = 0; v < m; ++v) {
            layout.hot[static_cast<std::size_t>(j)].push_back(next++);
        }
        layout.reflection.push_back(next++);
    }
    for (int j = 0; j < m; ++j) {
        layout.faucet.push_back(next++);
    }
    if (with_work_qubits) {
        layout.work = {next, next + 1};
    }
    return layout;
}

std::vector<std::vector<Gate>> Circuit::regions() const {
    std::vector<std::vector<Gate>> out;
    std::size_t start = 0;
    for (const auto &b : barriers) {
        out.emplace_back(gates.begin() + static_cast<std::ptrdiff_t>(start),
                         gates.begin() + static_cast<std::ptrdiff_t>(b.position));
        start = b.position;
    }
    out.emplace_back(gates.begin() + static_cast<std::ptrdiff_t>(start), gates.end());
    return out;
}

// -- step 2 ----------------------------------------------------------------------

std::vector<Gate> build_dicke_prep(std::span<const int> system, int num_down) {
    const int n_sites = static_cast<int>(system.size());
    if (num_down < 0 || num_down > n_sites) {
        throw ValidationError("Dicke state needs 0 <= M <= L");
    }
    std::vector<Gate> gates;
    // Positions are 1-based in the split-and-cyclic-shift recursion.
    const auto pos = [&](int p) { return system[static_cast<std::size_t>(p - 1)]; };

    for (int p = n_sites - num_down + 1; p <= n_sites; ++p) {
        gates.push_back(Gate::x(pos(p)));
    }
    for (int n = n_sites; n >= 2; --n) {
        const int k = std::min(num_down, n - 1);
        if (k == 0) {
            continue;
        }
        gates.push_back(Gate::x(pos(n), {{pos(n - 1), true}}));
        gates.push_back(Gate::ry(pos(n - 1), 2.0 * std::acos(std::sqrt(1.0 / n)),
                                 {{pos(n), true}}));
        gates.push_back(Gate::x(pos(n), {{pos(n - 1), true}}));
        for (int l = 2; l <= k; ++l) {
            gates.push_back(Gate::x(pos(n), {{pos(n - l), true}}));
            gates.push_back(Gate::ry(
                pos(n - l),
                2.0 * std::acos(std::sqrt(static_cast<double>(l) / n)),
                {{pos(n), true}, {pos(n - l + 1), true}}));
            gates.push_back(Gate::x(pos(n), {{pos(n - l), true}}));
        }
    }
    return gates;
}

std::vector<Gate> build_dicke_prep(int length, int num_down) {
    std::vector<int> system(static_cast<std::size_t>(std::max(length, 0)));
    for (int x = 0; x < length; ++x) {
        system[static_cast<std::size_t>(x)] = x;
    }
    return build_dicke_prep(system, num_down);
}

// -- step 3 ----------------------------------------------------------------------

std::vector<Gate> build_label_prep(const BetheSolution &solution,
                                   const ModelParams &params,
                                   const QubitLayout &layout, bool with_phases) {
    const int m = layout.num_down;
    if (static_cast<int>(solution.roots.size()) != m) {
        throw ValidationError("solution root count differs from the layout");
    }
    const auto &k = solution.roots;
    const auto uz = [](int i) { return static_cast<std::size_t>(i); };
    std::vector<Gate> gates;

    // Identity label: subregister j holds value j.
    for (int j = 0; j < m; ++j) {
        gates.push_back(Gate::x(layout.hot[uz(j)][uz(j)]));
    }
    for (int j = 0; j < m; ++j) {
        gates.push_back(Gate::hadamard(layout.reflection[uz(j)]));
    }
    if (with_phases) {
        // Relative weight of negating slot j, with the sign of the negation.
        for (int j = 0; j < m; ++j) {
            const double kj = k[uz(j)];
            const double angle = kj * (2.0 * params.length + 2.0) +
                                 phi(kj, params.h_prime, params.delta) +
                                 reflection_phase_sum(k, uz(j), params.delta) + pi;
            gates.push_back(Gate::phase(layout.reflection[uz(j)], angle));
        }
    }

    // Insertion network. Stage i carries value i from slot i leftwards; each
    // step splits off the amplitude that stops in the current slot, so every
    // one of the i + 1 final positions ends up with weight 1 / (i + 1).
    const int width = m + 1;
    for (int i = 1; i < m; ++i) {
        for (int t = 0; t < i; ++t) {
            const int b = i - t;
            const int a = b - 1;
            const double angle = std::acos(1.0 / std::sqrt(i + 1.0 - t));
            std::vector<int> targets = layout.hot[uz(a)];
            targets.push_back(layout.reflection[uz(a)]);
            targets.insert(targets.end(), layout.hot[uz(b)].begin(),
                           layout.hot[uz(b)].end());
            targets.push_back(layout.reflection[uz(b)]);

            for (int v = 0; v < i; ++v) {
                for (std::uint64_t ra = 0; ra < 2; ++ra) {
                    for (std::uint64_t rb = 0; rb < 2; ++rb) {
                        const std::uint64_t slot_low = (std::uint64_t{1} << v) | (ra << m);
                        const std::uint64_t slot_moving = (std::uint64_t{1} << i) | (rb << m);
                        const std::uint64_t u = slot_low | (slot_moving << width);
                        const std::uint64_t w = slot_moving | (slot_low << width);
                        gates.push_back(Gate::subspace_rotation(targets, u, w, angle));
                    }
                }
            }
            if (with_phases) {
                // The move inverted exactly the pair (i, v): weight
                // -exp(i Theta(+-k_i, +-k_v)).
                for (int v = 0; v < i; ++v) {
                    for (int ri = 0; ri < 2; ++ri) {
                        for (int rv = 0; rv < 2; ++rv) {
                            const double ki = ri ? -k[uz(i)] : k[uz(i)];
                            const double kv = rv ? -k[uz(v)] : k[uz(v)];
                            gates.push_back(Gate::phase(
                                layout.hot[uz(a)][uz(i)],
                                theta(ki, kv, params.delta) + pi,
                                {{layout.hot[uz(b)][uz(v)], true},
                                 {layout.reflection[uz(a)], ri == 1},
                                 {layout.reflection[uz(b)], rv == 1}}));
                        }
                    }
                }
            }
        }
    }
    return gates;
}

// -- step 4 ----------------------------------------------------------------------

std::vector<Gate> build_faucet_stage(const BetheSolution &solution,
                                     const ModelParams &params,
                                     const QubitLayout &layout) {
    const int m = layout.num_down;
    if (static_cast<int>(solution.roots.size()) != m) {
        throw ValidationError("solution root count differs from the layout");
    }
    const auto uz = [](int i) { return static_cast<std::size_t>(i); };
    std::vector<Gate> gates;
    for (int f : layout.faucet) {
        gates.push_back(Gate::x(f));
    }
    for (int x = 0; x < params.length; ++x) {
        // Open faucet j adds kappa_j for this site, so slot j collects
        // kappa_j (x_j + 1) before its faucet closes at x_j.
        for (int j = 0; j < m; ++j) {
            for (int v = 0; v < m; ++v) {
                const int target = layout.hot[uz(j)][uz(v)];
                const double kv = solution.roots[uz(v)];
                gates.push_back(Gate::phase(target, kv,
                                            {{layout.faucet[uz(j)], true},
                                             {layout.reflection[uz(j)], false}}));
                gates.push_back(Gate::phase(target, -kv,
                                            {{layout.faucet[uz(j)], true},
                                             {layout.reflection[uz(j)], true}}));
            }
        }
        // A down spin at x closes the lowest open faucet.
        for (int j = m - 1; j >= 0; --j) {
            std::vector<Control> controls{{layout.system[uz(x)], true}};
            if (j >= 1) {
                controls.push_back({layout.faucet[uz(j - 1)], false});
            }
            if (j <= m - 2) {
                controls.push_back({layout.faucet[uz(j + 1)], true});
            }
            gates.push_back(Gate::x(layout.faucet[uz(j)], std::move(controls)));
        }
    }
    return gates;
}

// -- assembly --------------------------------------------------------------------

std::vector<Gate> inverse(std::span<const Gate> gates) {
    std::vector<Gate> out;
    out.reserve(gates.size());
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        out.push_back(it->adjoint());
    }
    return out;
}

Circuit assemble_full(const BetheSolution &solution, const ModelParams &params) {
    Circuit c;
    c.layout = make_layout(params);
    const auto append = [&](std::vector<Gate> part, const char *barrier) {
        c.gates.insert(c.gates.end(), std::make_move_iterator(part.begin()),
                       std::make_move_iterator(part.end()));
        c.barriers.push_back({barrier, c.gates.size()});
    };
    append(build_dicke_prep(c.layout.system, params.num_down), "step2");
    append(build_label_prep(solution, params, c.layout, true), "step3");
    append(build_faucet_stage(solution, params, c.layout), "step4");
    append(inverse(build_label_prep(solution, params, c.layout, false)), "step5");
    return c;
}

void run_circuit(StateVector &state, const Circuit &circuit) {
    if (state.num_qubits() < circuit.num_qubits()) {
        throw ValidationError("register smaller than the circuit");
    }
    for (const Gate &g : circuit.gates) {
        apply_gate(state, g);
    }
}

RunReport run_and_project(const Circuit &circuit, const BetheSolution &solution,
                          const ModelParams &params) {
    const auto start = std::chrono::steady_clock::now();
    if (circuit.layout.length != params.length ||
        circuit.layout.num_down != static_cast<int>(solution.roots.size())) {
        throw ValidationError("circuit was assembled for different parameters");
    }

    StateVector state(circuit.num_qubits());
    run_circuit(state, circuit);

    const auto labels = circuit.layout.label_qubits();
    RunReport report;
    try {
        report.success_probability =
            project_in_place(state, labels, std::string(labels.size(), '0'));
    } catch (const ImpossibleOutcomeError &) {
        throw NullStateError("the all-zero label branch is empty");
    }
    const auto &faucets = circuit.layout.faucet;
    const double faucet_zero =
        project_in_place(state, faucets, std::string(faucets.size(), '0'));
    if (faucet_zero < 1.0 - kFaucetLeakTolerance) {
        throw Error("faucet register not cleared on the success branch");
    }

    report.system_state = extract_register(state, circuit.layout.system);
    report.quantum_numbers = solution.quantum_numbers;
    report.roots = solution.roots;
    report.energy = solution.energy;
    report.iterations = solution.iterations;
    report.eigen_residual =
        verify_eigenstate(report.system_state, params, solution.energy);

    const auto oracle = direct_bethe_state(solution, params).normalized().to_dense();
    const StateVector oracle_state(params.length, oracle);
    report.oracle_fidelity = std::abs(overlap(oracle_state, report.system_state));

    report.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

} // namespace xxz
