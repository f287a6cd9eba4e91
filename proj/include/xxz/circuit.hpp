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
 * Probabilistic Bethe-state preparation circuit.
 *
 * Stages, separated by named barriers:
 *   step2  Dicke state |D_{L,M}> on the system register
 *   step3  label register in sum_P eps_P A(P)/A(id) |P> / sqrt(2^M M!)
 *   step4  faucet sweep, kicking exp(i sum_j kappa_j (x_j + 1)) onto each
 *          (configuration, label) branch
 *   step5  label preparation without phases, inverted
 * Projecting labels and faucets onto |0...0> then leaves the system register
 * proportional to the Bethe state.
 *
 * Label encoding: subregister j holds one hot qubit per value 0..M-1 plus a
 * reflection qubit that is |1> when slot j carries a negated momentum.
 */
#pragma once

#include <string>
#include <vector>

#include "xxz/bethe.hpp"
#include "xxz/statevector.hpp"

namespace xxz {

struct QubitLayout {
    int length = 0;
    int num_down = 0;
    std::vector<int> system;
    std::vector<std::vector<int>> hot; ///< hot[j][m]: value m in subregister j
    std::vector<int> reflection;       ///< one per subregister
    std::vector<int> faucet;
    std::vector<int> work; ///< only allocated for export

    [[nodiscard]] int total() const noexcept;
    /// Hot and reflection qubits, subregister by subregister.
    [[nodiscard]] std::vector<int> label_qubits() const;
    /// Every qubit except system and work qubits.
    [[nodiscard]] std::vector<int> ancilla_qubits() const;
};

/// Blocks in order system, labels, faucets (and two work qubits on request).
/// CapacityError when the simulated block exceeds kMaxQubits.
[[nodiscard]] QubitLayout make_layout(const ModelParams &params,
                                      bool with_work_qubits = false);

struct Barrier {
    std::string name;
    std::size_t position; ///< number of gates preceding the barrier
};

struct Circuit {
    QubitLayout layout;
    std::vector<Gate> gates;
    std::vector<Barrier> barriers;

    [[nodiscard]] int num_qubits() const noexcept { return layout.total(); }
    /// Gates between consecutive barriers; barriers.size() + 1 regions.
    [[nodiscard]] std::vector<std::vector<Gate>> regions() const;
};

/// Uniform weight-M superposition on `system` (qubit system[p] is position p).
[[nodiscard]] std::vector<Gate> build_dicke_prep(std::span<const int> system,
                                                 int num_down);
/// Same on qubits 0..L-1.
[[nodiscard]] std::vector<Gate> build_dicke_prep(int length, int num_down);

[[nodiscard]] std::vector<Gate> build_label_prep(const BetheSolution &solution,
                                                 const ModelParams &params,
                                                 const QubitLayout &layout,
                                                 bool with_phases);

[[nodiscard]] std::vector<Gate>
build_faucet_stage(const BetheSolution &solution, const ModelParams &params,
                   const QubitLayout &layout);

/// Reversed gate list with every gate replaced by its adjoint.
[[nodiscard]] std::vector<Gate> inverse(std::span<const Gate> gates);

[[nodiscard]] Circuit assemble_full(const BetheSolution &solution,
                                    const ModelParams &params);

struct RunReport {
    QuantumNumbers quantum_numbers;
    std::vector<double> roots;
    double energy = 0.0;
    double success_probability = 0.0;
    double eigen_residual = 0.0;
    double oracle_fidelity = 0.0;
    int iterations = 0;
    double wall_time = 0.0; ///< seconds, circuit execution and checks
    StateVector system_state{1};
};

void run_circuit(StateVector &state, const Circuit &circuit);

/// Runs `circuit` from |0...0>, keeps the all-zero label branch, checks the
/// faucets are already |0...0> there, and compares the system register with
/// the Hamiltonian and the directly built Bethe state.
[[nodiscard]] RunReport run_and_project(const Circuit &circuit,
                                        const BetheSolution &solution,
                                        const ModelParams &params);

} // namespace xxz
