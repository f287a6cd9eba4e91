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

#include <regex>
#include <set>
#include <sstream>

#include "support/oracles.hpp"
#include "xxz/circuit.hpp"
#include "xxz/qasm.hpp"

namespace {

using cplx = std::complex<double>;
using Mat = std::array<cplx, 4>; // row-major 2x2

/// Minimal interpreter for the qelib1 subset the exporter emits.
class QasmMachine {
  public:
    explicit QasmMachine(const std::string &text) { load(text); }

    int num_qubits = 0;
    int barriers = 0;
    std::vector<cplx> amps;
    std::set<std::string> names;

  private:
    void load(const std::string &text) {
        std::istringstream is(text);
        std::string line;
        const std::regex qreg(R"(qreg q\[(\d+)\];)");
        const std::regex op(R"((\w+)(?:\(([^)]*)\))? (.*);)");
        std::smatch m;
        while (std::getline(is, line)) {
            if (line.empty() || line.starts_with("//") || line.starts_with("OPENQASM") ||
                line.starts_with("include")) {
                continue;
            }
            if (line == "barrier q;") {
                ++barriers;
                continue;
            }
            if (std::regex_match(line, m, qreg)) {
                num_qubits = std::stoi(m[1]);
                amps.assign(std::size_t{1} << num_qubits, 0.0);
                amps[0] = 1.0;
                continue;
            }
            ASSERT_TRUE(std::regex_match(line, m, op)) << line;
            names.insert(m[1]);
            apply(m[1], numbers(m[2]), qubits(m[3]));
        }
    }

    static std::vector<double> numbers(const std::string &s) {
        std::vector<double> out;
        std::istringstream is(s);
        std::string item;
        while (std::getline(is, item, ',')) {
            out.push_back(std::stod(item));
        }
        return out;
    }

    static std::vector<int> qubits(const std::string &s) {
        std::vector<int> out;
        const std::regex ref(R"(q\[(\d+)\])");
        for (auto it = std::sregex_iterator(s.begin(), s.end(), ref); it != std::sregex_iterator();
             ++it) {
            out.push_back(std::stoi((*it)[1]));
        }
        return out;
    }

    static Mat u3(double t, double p, double l) {
        const double c = std::cos(t / 2);
        const double s = std::sin(t / 2);
        const auto e = [](double x) { return std::exp(cplx{0, x}); };
        return {c, -e(l) * s, e(p) * s, e(p + l) * c};
    }

    void controlled(const Mat &u, const std::vector<int> &controls, int target) {
        std::uint64_t mask = 0;
        for (int c : controls) {
            mask |= std::uint64_t{1} << c;
        }
        const std::uint64_t tbit = std::uint64_t{1} << target;
        for (std::uint64_t i = 0; i < amps.size(); ++i) {
            if ((i & tbit) || (i & mask) != mask) {
                continue;
            }
            const cplx a0 = amps[i];
            const cplx a1 = amps[i | tbit];
            amps[i] = u[0] * a0 + u[1] * a1;
            amps[i | tbit] = u[2] * a0 + u[3] * a1;
        }
    }

    void apply(const std::string &name, const std::vector<double> &a, const std::vector<int> &q) {
        const double r = 1 / std::sqrt(2.0);
        const Mat x{0.0, 1.0, 1.0, 0.0};
        if (name == "x") {
            controlled(x, {}, q[0]);
        } else if (name == "h") {
            controlled({r, r, r, -r}, {}, q[0]);
        } else if (name == "ry") {
            controlled(u3(a[0], 0, 0), {}, q[0]);
        } else if (name == "u1") {
            controlled(u3(0, 0, a[0]), {}, q[0]);
        } else if (name == "u3") {
            controlled(u3(a[0], a[1], a[2]), {}, q[0]);
        } else if (name == "cx") {
            controlled(x, {q[0]}, q[1]);
        } else if (name == "ccx") {
            controlled(x, {q[0], q[1]}, q[2]);
        } else if (name == "cu1") {
            controlled(u3(0, 0, a[0]), {q[0]}, q[1]);
        } else if (name == "cu3") {
            controlled(u3(a[0], a[1], a[2]), {q[0]}, q[1]);
        } else {
            FAIL() << "unexpected gate " << name;
        }
    }
};

/// max |a_i - e^{i g} b_i| with the global phase g fitted on the largest b_i.
double distance_up_to_phase(std::span<const cplx> a, std::span<const cplx> b) {
    std::size_t big = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (std::abs(b[i]) > std::abs(b[big])) {
            big = i;
        }
    }
    const cplx phase = std::abs(a[big]) > 0 ? a[big] / std::abs(a[big]) * std::abs(b[big]) / b[big]
                                            : cplx{1.0};
    double d = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        d = std::max(d, std::abs(a[i] - phase * b[i]));
    }
    return d;
}

/// Native run embedded in the exported register (work qubits on top, |0>).
std::vector<cplx> native_embedded(const xxz::Circuit &c) {
    xxz::StateVector s(c.num_qubits());
    xxz::run_circuit(s, c);
    std::vector<cplx> out(std::size_t{4} << c.num_qubits(), 0.0);
    std::copy(s.amplitudes().begin(), s.amplitudes().end(), out.begin());
    return out;
}

TEST(Qasm, FullCircuitMatchesNativeSimulation) {
    const xxz::ModelParams p{0.5, 0.1, 0.3, 4, 2};
    const auto sol = xxz::solve_bethe_roots(xxz::QuantumNumbers({2, 3}), p);
    const auto circuit = xxz::assemble_full(sol, p);
    const auto text = xxz::to_qasm(circuit);
    QasmMachine machine(text);
    ASSERT_EQ(machine.num_qubits, circuit.num_qubits() + 2);
    EXPECT_EQ(machine.barriers, 4);
    const auto native = native_embedded(circuit);
    EXPECT_LT(distance_up_to_phase(machine.amps, native), 1e-9);
    for (const auto &name : machine.names) {
        EXPECT_TRUE(name == "x" || name == "h" || name == "ry" || name == "u1" || name == "u3" ||
                    name == "cx" || name == "ccx" || name == "cu1" || name == "cu3")
            << name;
    }
}

TEST(Qasm, BarrierCommentsInOrder) {
    const xxz::ModelParams p{0.5, 0.1, 0.3, 4, 2};
    const auto sol = xxz::solve_bethe_roots(xxz::QuantumNumbers({2, 3}), p);
    const auto text = xxz::to_qasm(xxz::assemble_full(sol, p));
    std::size_t at = 0;
    for (const char *step : {"// step2\nbarrier q;", "// step3\nbarrier q;",
                             "// step4\nbarrier q;", "// step5\nbarrier q;"}) {
        const auto found = text.find(step, at);
        ASSERT_NE(found, std::string::npos) << step;
        at = found;
    }
    EXPECT_EQ(text.rfind("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n", 0), 0U);
}

// Many-controlled gates of every kind and polarity exercise the work-qubit
// chain and the square-root recursion.
TEST(Qasm, RandomMultiControlledGatesMatch) {
    oracle::Draw draw(123);
    for (int trial = 0; trial < 40; ++trial) {
        xxz::Circuit c;
        c.layout.length = 7;
        std::vector<int> qubits(7);
        std::iota(qubits.begin(), qubits.end(), 0);
        for (int g = 0; g < 6; ++g) {
            std::shuffle(qubits.begin(), qubits.end(), draw.engine());
            const int kind = draw.integer(0, 5);
            const int n_targets = kind == 4 ? 2 : (kind == 5 ? draw.integer(1, 3) : 1);
            const int n_controls = draw.integer(0, 7 - n_targets);
            std::vector<int> targets(qubits.begin(), qubits.begin() + n_targets);
            std::vector<xxz::Control> controls;
            for (int i = 0; i < n_controls; ++i) {
                controls.push_back({qubits[static_cast<std::size_t>(n_targets + i)],
                                    draw.integer(0, 1) == 1});
            }
            const double angle = draw.uniform(-3, 3);
            switch (kind) {
            case 0:
                c.gates.push_back(xxz::Gate::x(targets[0], controls));
                break;
            case 1:
                c.gates.push_back(xxz::Gate::hadamard(targets[0], controls));
                break;
            case 2:
                c.gates.push_back(xxz::Gate::phase(targets[0], angle, controls));
                break;
            case 3:
                c.gates.push_back(xxz::Gate::ry(targets[0], angle, controls));
                break;
            case 4:
                c.gates.push_back(xxz::Gate::swap(targets[0], targets[1], controls));
                break;
            default: {
                const int limit = 1 << n_targets;
                const auto u = static_cast<std::uint64_t>(draw.integer(0, limit - 1));
                auto v = u;
                while (v == u) {
                    v = static_cast<std::uint64_t>(draw.integer(0, limit - 1));
                }
                c.gates.push_back(xxz::Gate::subspace_rotation(targets, u, v, angle, controls));
            }
            }
        }
        // Start from a spread-out state so every control pattern is populated.
        xxz::Circuit prep;
        prep.layout.length = 7;
        for (int q = 0; q < 7; ++q) {
            prep.gates.push_back(xxz::Gate::ry(q, draw.uniform(0.3, 2.8)));
            prep.gates.push_back(xxz::Gate::phase(q, draw.uniform(-3, 3)));
        }
        prep.gates.insert(prep.gates.end(), c.gates.begin(), c.gates.end());
        QasmMachine machine(xxz::to_qasm(prep));
        EXPECT_LT(distance_up_to_phase(machine.amps, native_embedded(prep)), 1e-10)
            << "trial " << trial;
    }
}

} // namespace
