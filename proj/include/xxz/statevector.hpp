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
 * Dense statevector simulator.
 *
 * Bit order is little-endian throughout: qubit q is bit q of the basis index,
 * so qubit 0 is the least significant bit. Multi-controlled gates act
 * natively (each control is a mask test) and are never decomposed.
 */
#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xxz {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 30;

class StateVector {
  public:
    /// |0...0> on n qubits; CapacityError unless 1 <= n <= kMaxQubits.
    explicit StateVector(int num_qubits);
    /// Takes ownership of `amplitudes`, whose size must be 2^num_qubits.
    StateVector(int num_qubits, std::vector<cplx> amplitudes);

    [[nodiscard]] int num_qubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::uint64_t dimension() const noexcept {
        return amplitudes_.size();
    }
    [[nodiscard]] std::span<cplx> amplitudes() noexcept { return amplitudes_; }
    [[nodiscard]] std::span<const cplx> amplitudes() const noexcept {
        return amplitudes_;
    }
    [[nodiscard]] cplx operator[](std::uint64_t i) const { return amplitudes_[i]; }

    [[nodiscard]] double norm() const;

  private:
    int num_qubits_;
    std::vector<cplx> amplitudes_;
};

[[nodiscard]] StateVector init_register(int num_qubits);

enum class GateKind {
    PauliX,
    Hadamard,
    PhaseShift,       ///< diag(1, e^{i angle})
    RotationY,        ///< exp(-i angle Y / 2)
    Swap,
    SubspaceRotation, ///< real rotation by `angle` in span{|u>, |v>}
};

struct Control {
    int qubit = 0;
    bool on = true; ///< false: the gate fires when the control reads |0>

    friend bool operator==(const Control &, const Control &) = default;
};

struct Gate {
    GateKind kind = GateKind::PauliX;
    std::vector<int> targets;
    std::vector<Control> controls;
    double angle = 0.0;
    /// SubspaceRotation only: bit i of `u`/`v` is the value of targets[i].
    std::uint64_t u = 0;
    std::uint64_t v = 0;

    static Gate x(int target, std::vector<Control> controls = {});
    static Gate hadamard(int target, std::vector<Control> controls = {});
    static Gate phase(int target, double angle,
                      std::vector<Control> controls = {});
    static Gate ry(int target, double angle, std::vector<Control> controls = {});
    static Gate swap(int a, int b, std::vector<Control> controls = {});
    /// |u> -> cos(angle)|u> + sin(angle)|v>, |v> -> -sin(angle)|u> + cos(angle)|v>.
    static Gate subspace_rotation(std::vector<int> targets, std::uint64_t u,
                                  std::uint64_t v, double angle,
                                  std::vector<Control> controls = {});

    [[nodiscard]] Gate adjoint() const;
    /// ValidationError on out-of-range or repeated qubits, non-finite angle,
    /// or a malformed subspace pair.
    void validate(int num_qubits) const;

    friend bool operator==(const Gate &, const Gate &) = default;
};

[[nodiscard]] std::string_view gate_name(GateKind kind) noexcept;

void apply_gate(StateVector &state, const Gate &gate);

struct ProjectionOutcome {
    double probability = 0.0;
    StateVector post_state{1};
};

/// Keeps the branch where qubits[i] reads outcome[i] ('0' or '1').
/// ImpossibleOutcomeError if that branch has probability below 1e-15.
[[nodiscard]] ProjectionOutcome
project_subregister(const StateVector &state, std::span<const int> qubits,
                    std::string_view outcome);

/// In-place variant; returns the branch probability before renormalizing.
double project_in_place(StateVector &state, std::span<const int> qubits,
                        std::string_view outcome);

/// <a|b>, conjugating a.
[[nodiscard]] cplx overlap(const StateVector &a, const StateVector &b);

/// Amplitudes of `qubits` (qubit qubits[i] becomes bit i) on the slice where
/// every other qubit is |0>. ValidationError if more than `tolerance` of the
/// squared norm lies outside that slice.
[[nodiscard]] StateVector extract_register(const StateVector &state,
                                           std::span<const int> qubits,
                                           double tolerance = 1e-12);

// State dump: 16-byte header ("BFSV", u32 version = 1, u32 num_qubits,
// u32 reserved = 0) then little-endian f64 (re, im) pairs in index order.
void write_state_dump(const std::filesystem::path &path,
                      const StateVector &state);
[[nodiscard]] StateVector read_state_dump(const std::filesystem::path &path);

} // namespace xxz
