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

#include "xxz/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "xxz/error.hpp"
#include "xxz/kernels.hpp"

namespace xxz {

namespace {

constexpr double kMinBranchProbability = 1e-15;

std::uint64_t bit(int q) { return std::uint64_t{1} << q; }

/// Scatter the low bits of `pattern` onto `qubits`.
std::uint64_t spread(std::uint64_t pattern, std::span<const int> qubits) {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        if ((pattern >> i) & 1U) {
            out |= bit(qubits[i]);
        }
    }
    return out;
}

/// Index set {i : (i & fixed_mask) == fixed_value} split into contiguous runs
/// below the lowest fixed bit. `visit(base, run_length)` for each run.
template <typename Visit>
void for_each_run(std::uint64_t dim, std::uint64_t fixed_mask,
                  std::uint64_t fixed_value, Visit &&visit) {
    const std::uint64_t run =
        fixed_mask == 0 ? dim : (fixed_mask & (~fixed_mask + 1));
    const std::uint64_t free_high = (dim - 1) & ~fixed_mask & ~(run - 1);
    std::uint64_t sub = 0;
    do {
        visit(sub | fixed_value, run);
        sub = (sub - free_high) & free_high;
    } while (sub != 0);
}

struct Selection {
    std::uint64_t mask = 0;
    std::uint64_t value = 0;

    void require(int qubit, bool set) {
        mask |= bit(qubit);
        if (set) {
            value |= bit(qubit);
        }
    }
};

Selection control_selection(const Gate &g) {
    Selection s;
    for (const auto &c : g.controls) {
        s.require(c.qubit, c.on);
    }
    return s;
}

/// Real 2x2 rotation applied to every (i, i ^ flip) pair with i in `sel`.
void apply_pairs(StateVector &state, const Selection &sel, std::uint64_t flip,
                 double m00, double m01, double m10, double m11) {
    const KernelTable &k = active_kernels();
    cplx *amps = state.amplitudes().data();
    for_each_run(state.dimension(), sel.mask, sel.value,
                 [&](std::uint64_t base, std::uint64_t len) {
                     k.mix(amps + base, amps + (base ^ flip), len, m00, m01,
                           m10, m11);
                 });
}

void exchange_pairs(StateVector &state, const Selection &sel,
                    std::uint64_t flip) {
    cplx *amps = state.amplitudes().data();
    for_each_run(state.dimension(), sel.mask, sel.value,
                 [&](std::uint64_t base, std::uint64_t len) {
                     std::swap_ranges(amps + base, amps + base + len,
                                      amps + (base ^ flip));
                 });
}

} // namespace

// -- StateVector ---------------------------------------------------------------

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw CapacityError("register size " + std::to_string(num_qubits) +
                            " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
    amplitudes_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
    amplitudes_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<cplx> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw CapacityError("register size " + std::to_string(num_qubits) +
                            " outside [1, " + std::to_string(kMaxQubits) + "]");
    }
    if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
        throw ValidationError("amplitude count is not 2^num_qubits");
    }
}

double StateVector::norm() const {
    return std::sqrt(active_kernels().norm_sq(amplitudes_.data(), amplitudes_.size()));
}

StateVector init_register(int num_qubits) { return StateVector(num_qubits); }

// -- Gate ------------------------------------------------------------------------

Gate Gate::x(int target, std::vector<Control> controls) {
    return {GateKind::PauliX, {target}, std::move(controls), 0.0, 0, 0};
}

Gate Gate::hadamard(int target, std::vector<Control> controls) {
    return {GateKind::Hadamard, {target}, std::move(controls), 0.0, 0, 0};
}

Gate Gate::phase(int target, double angle, std::vector<Control> controls) {
    return {GateKind::PhaseShift, {target}, std::move(controls), angle, 0, 0};
}

Gate Gate::ry(int target, double angle, std::vector<Control> controls) {
    return {GateKind::RotationY, {target}, std::move(controls), angle, 0, 0};
}

Gate Gate::swap(int a, int b, std::vector<Control> controls) {
    return {GateKind::Swap, {a, b}, std::move(controls), 0.0, 0, 0};
}

Gate Gate::subspace_rotation(std::vector<int> targets, std::uint64_t u,
                             std::uint64_t v, double angle,
                             std::vector<Control> controls) {
    return {GateKind::SubspaceRotation, std::move(targets), std::move(controls),
            angle, u, v};
}

Gate Gate::adjoint() const {
    Gate g = *this;
    switch (kind) {
    case GateKind::PhaseShift:
    case GateKind::RotationY:
    case GateKind::SubspaceRotation:
        g.angle = -angle;
        break;
    default:
        break;
    }
    return g;
}

void Gate::validate(int num_qubits) const {
    const std::size_t expected_targets = [&]() -> std::size_t {
        switch (kind) {
        case GateKind::Swap:
            return 2;
        case GateKind::SubspaceRotation:
            return targets.size();
        default:
            return 1;
        }
    }();
    if (targets.empty() || targets.size() != expected_targets) {
        throw ValidationError(std::string(gate_name(kind)) +
                              ": wrong number of targets");
    }
    std::uint64_t used = 0;
    const auto claim = [&](int q) {
        if (q < 0 || q >= num_qubits) {
            throw ValidationError(std::string(gate_name(kind)) + ": qubit " +
                                  std::to_string(q) + " out of range");
        }
        if (used & bit(q)) {
            throw ValidationError(std::string(gate_name(kind)) + ": qubit " +
                                  std::to_string(q) + " used twice");
        }
        used |= bit(q);
    };
    for (int t : targets) {
        claim(t);
    }
    for (const auto &c : controls) {
        claim(c.qubit);
    }
    if (!std::isfinite(angle)) {
        throw ValidationError(std::string(gate_name(kind)) + ": non-finite angle");
    }
    if (kind == GateKind::SubspaceRotation) {
        const std::uint64_t limit =
            targets.size() >= 64 ? ~std::uint64_t{0} : (bit(static_cast<int>(targets.size())) - 1);
        if (u == v || (u & ~limit) != 0 || (v & ~limit) != 0) {
            throw ValidationError("SubspaceRotation: malformed basis pair");
        }
    }
}

std::string_view gate_name(GateKind kind) noexcept {
    switch (kind) {
    case GateKind::PauliX:
        return "PauliX";
    case GateKind::Hadamard:
        return "Hadamard";
    case GateKind::PhaseShift:
        return "PhaseShift";
    case GateKind::RotationY:
        return "RotationY";
    case GateKind::Swap:
        return "Swap";
    case GateKind::SubspaceRotation:
        return "SubspaceRotation";
    }
    return "?";
}

// -- application -------------------------------------------------------------------

void apply_gate(StateVector &state, const Gate &gate) {
    gate.validate(state.num_qubits());
    Selection sel = control_selection(gate);

    switch (gate.kind) {
    case GateKind::PauliX: {
        sel.require(gate.targets[0], false);
        exchange_pairs(state, sel, bit(gate.targets[0]));
        break;
    }
    case GateKind::Swap: {
        sel.require(gate.targets[0], true);
        sel.require(gate.targets[1], false);
        exchange_pairs(state, sel, bit(gate.targets[0]) | bit(gate.targets[1]));
        break;
    }
    case GateKind::Hadamard: {
        const double s = std::numbers::sqrt2 / 2.0;
        sel.require(gate.targets[0], false);
        apply_pairs(state, sel, bit(gate.targets[0]), s, s, s, -s);
        break;
    }
    case GateKind::RotationY: {
        const double c = std::cos(0.5 * gate.angle);
        const double s = std::sin(0.5 * gate.angle);
        sel.require(gate.targets[0], false);
        apply_pairs(state, sel, bit(gate.targets[0]), c, -s, s, c);
        break;
    }
    case GateKind::SubspaceRotation: {
        const double c = std::cos(gate.angle);
        const double s = std::sin(gate.angle);
        const std::uint64_t pu = spread(gate.u, gate.targets);
        const std::uint64_t pv = spread(gate.v, gate.targets);
        sel.mask |= spread(~std::uint64_t{0}, gate.targets);
        sel.value |= pu;
        apply_pairs(state, sel, pu ^ pv, c, -s, s, c);
        break;
    }
    case GateKind::PhaseShift: {
        sel.require(gate.targets[0], true);
        const cplx factor = std::polar(1.0, gate.angle);
        const KernelTable &k = active_kernels();
        cplx *amps = state.amplitudes().data();
        for_each_run(state.dimension(), sel.mask, sel.value,
                     [&](std::uint64_t base, std::uint64_t len) {
                         k.scale(amps + base, len, factor);
                     });
        break;
    }
    }
}

// -- measurement-like operations ----------------------------------------------------

double project_in_place(StateVector &state, std::span<const int> qubits,
                        std::string_view outcome) {
    if (qubits.size() != outcome.size()) {
        throw ValidationError("outcome length differs from qubit count");
    }
    Selection keep;
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        const int q = qubits[i];
        if (q < 0 || q >= state.num_qubits()) {
            throw ValidationError("projection qubit out of range");
        }
        if (keep.mask & bit(q)) {
            throw ValidationError("projection qubits must be distinct");
        }
        if (outcome[i] != '0' && outcome[i] != '1') {
            throw ValidationError("outcome must consist of '0' and '1'");
        }
        keep.require(q, outcome[i] == '1');
    }

    auto amps = state.amplitudes();
    const KernelTable &k = active_kernels();
    double probability = 0.0;
    for_each_run(state.dimension(), keep.mask, keep.value,
                 [&](std::uint64_t base, std::uint64_t len) {
                     probability += k.norm_sq(amps.data() + base, len);
                 });
    if (probability < kMinBranchProbability) {
        throw ImpossibleOutcomeError("projection onto outcome '" +
                                     std::string(outcome) +
                                     "' has vanishing probability");
    }
    const double inv = 1.0 / std::sqrt(probability);
    for (std::uint64_t i = 0; i < amps.size(); ++i) {
        amps[i] = (i & keep.mask) == keep.value ? amps[i] * inv : cplx{0.0, 0.0};
    }
    return probability;
}

ProjectionOutcome project_subregister(const StateVector &state,
                                      std::span<const int> qubits,
                                      std::string_view outcome) {
    ProjectionOutcome out{0.0, state};
    out.probability = project_in_place(out.post_state, qubits, outcome);
    return out;
}

cplx overlap(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw ValidationError("overlap of registers with different sizes");
    }
    return active_kernels().inner(a.amplitudes().data(), b.amplitudes().data(),
                                  a.dimension());
}

StateVector extract_register(const StateVector &state,
                             std::span<const int> qubits, double tolerance) {
    std::uint64_t mask = 0;
    for (int q : qubits) {
        if (q < 0 || q >= state.num_qubits() || (mask & bit(q))) {
            throw ValidationError("extract_register: bad qubit list");
        }
        mask |= bit(q);
    }
    const int n = static_cast<int>(qubits.size());
    std::vector<cplx> out(std::size_t{1} << n);
    double inside = 0.0;
    for (std::uint64_t local = 0; local < out.size(); ++local) {
        out[local] = state[spread(local, qubits)];
        inside += std::norm(out[local]);
    }
    const double total = std::pow(state.norm(), 2);
    if (total - inside > tolerance * std::max(total, 1.0)) {
        throw ValidationError("extract_register: other qubits are not all |0>");
    }
    return StateVector(n, std::move(out));
}

} // namespace xxz
