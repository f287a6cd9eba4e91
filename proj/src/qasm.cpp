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

#include "xxz/qasm.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace xxz {

namespace {

using Mat2 = Eigen::Matrix2cd;

constexpr double kMatchTol = 1e-13;

Mat2 pauli_x() {
    Mat2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Mat2 hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    Mat2 m;
    m << s, s, s, -s;
    return m;
}

Mat2 phase_matrix(double angle) {
    Mat2 m;
    m << 1.0, 0.0, 0.0, std::polar(1.0, angle);
    return m;
}

Mat2 ry_matrix(double angle) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    Mat2 m;
    m << c, -s, s, c;
    return m;
}

bool close(const Mat2 &a, const Mat2 &b) { return (a - b).cwiseAbs().maxCoeff() < kMatchTol; }

Mat2 unitary_sqrt(const Mat2 &u) {
    Eigen::ComplexEigenSolver<Mat2> es(u);
    const Mat2 w = es.eigenvectors();
    Eigen::Vector2cd roots;
    for (int i = 0; i < 2; ++i) {
        roots(i) = std::sqrt(es.eigenvalues()(i));
    }
    // Eigenvectors of a normal matrix with distinct eigenvalues are
    // orthogonal; for a multiple of the identity any basis works.
    return w * roots.asDiagonal() * w.inverse();
}

/// u = e^{i alpha} [[cos t/2, -e^{il} sin t/2], [e^{ip} sin t/2, e^{i(p+l)} cos t/2]].
struct U3Params {
    double alpha, theta, phi, lambda;
};

U3Params decompose(const Mat2 &u) {
    const double c = std::abs(u(0, 0));
    const double s = std::abs(u(1, 0));
    U3Params p{};
    p.theta = 2.0 * std::atan2(s, c);
    if (c > 1e-12) {
        p.alpha = std::arg(u(0, 0));
        if (s > 1e-12) {
            p.phi = std::arg(u(1, 0)) - p.alpha;
            p.lambda = std::arg(-u(0, 1)) - p.alpha;
        } else {
            p.phi = 0.0;
            p.lambda = std::arg(u(1, 1)) - p.alpha;
        }
    } else {
        p.phi = 0.0;
        p.alpha = std::arg(u(1, 0));
        p.lambda = std::arg(-u(0, 1)) - p.alpha;
    }
    return p;
}

class Emitter {
  public:
    Emitter(std::ostream &os, std::vector<int> work) : os_(os), work_(std::move(work)) {
        os_ << std::setprecision(17);
    }

    void gate(const Gate &g) {
        std::vector<int> positive;
        std::vector<int> flipped;
        for (const auto &c : g.controls) {
            positive.push_back(c.qubit);
            if (!c.on) {
                flipped.push_back(c.qubit);
            }
        }
        switch (g.kind) {
        case GateKind::PauliX:
            wrapped(flipped, [&] { controlled(pauli_x(), positive, g.targets[0], work_); });
            break;
        case GateKind::Hadamard:
            wrapped(flipped, [&] { controlled(hadamard(), positive, g.targets[0], work_); });
            break;
        case GateKind::PhaseShift:
            wrapped(flipped, [&] {
                controlled(phase_matrix(g.angle), positive, g.targets[0], work_);
            });
            break;
        case GateKind::RotationY:
            wrapped(flipped, [&] {
                controlled(ry_matrix(g.angle), positive, g.targets[0], work_);
            });
            break;
        case GateKind::Swap: {
            const int a = g.targets[0];
            const int b = g.targets[1];
            wrapped(flipped, [&] {
                cx(b, a);
                auto with_a = positive;
                with_a.push_back(a);
                controlled(pauli_x(), with_a, b, work_);
                cx(b, a);
            });
            break;
        }
        case GateKind::SubspaceRotation:
            subspace_rotation(g, positive, flipped);
            break;
        }
    }

    void comment(const std::string &text) { os_ << "// " << text << '\n'; }
    void barrier() { os_ << "barrier q;\n"; }

  private:
    template <typename Body> void wrapped(const std::vector<int> &flipped, Body &&body) {
        for (int q : flipped) {
            os_ << "x q[" << q << "];\n";
        }
        body();
        for (int q : flipped) {
            os_ << "x q[" << q << "];\n";
        }
    }

    void cx(int c, int t) { os_ << "cx q[" << c << "],q[" << t << "];\n"; }

    void subspace_rotation(const Gate &g, const std::vector<int> &positive,
                           const std::vector<int> &flipped) {
        const std::uint64_t diff = g.u ^ g.v;
        std::size_t pivot = 0;
        while (((diff >> pivot) & 1U) == 0) {
            ++pivot;
        }
        const int pivot_qubit = g.targets[pivot];
        const bool pivot_set = ((g.u >> pivot) & 1U) != 0;
        // Fold the other differing bits onto the pivot so that |u> and |v>
        // differ in the pivot alone, then rotate the pivot under the rest.
        std::vector<int> folded;
        for (std::size_t i = 0; i < g.targets.size(); ++i) {
            if (i != pivot && ((diff >> i) & 1U)) {
                folded.push_back(g.targets[i]);
            }
        }
        std::vector<int> controls = positive;
        std::vector<int> negated = flipped;
        for (std::size_t i = 0; i < g.targets.size(); ++i) {
            if (i == pivot) {
                continue;
            }
            bool bit = ((g.u >> i) & 1U) != 0;
            if ((diff >> i) & 1U) {
                bit = bit != pivot_set;
            }
            controls.push_back(g.targets[i]);
            if (!bit) {
                negated.push_back(g.targets[i]);
            }
        }
        const double angle = pivot_set ? -2.0 * g.angle : 2.0 * g.angle;
        for (int q : folded) {
            cx(pivot_qubit, q);
        }
        wrapped(negated, [&] { controlled(ry_matrix(angle), controls, pivot_qubit, work_); });
        for (int q : folded) {
            cx(pivot_qubit, q);
        }
    }

    void single(const Mat2 &u, int t) {
        if (close(u, Mat2::Identity())) {
            return;
        }
        if (close(u, pauli_x())) {
            os_ << "x q[" << t << "];\n";
        } else if (close(u, hadamard())) {
            os_ << "h q[" << t << "];\n";
        } else if (std::abs(u(0, 1)) < kMatchTol && std::abs(u(1, 0)) < kMatchTol &&
                   std::abs(u(0, 0) - 1.0) < kMatchTol) {
            os_ << "u1(" << std::arg(u(1, 1)) << ") q[" << t << "];\n";
        } else if (std::abs(u.imag().maxCoeff()) < kMatchTol &&
                   std::abs(u.imag().minCoeff()) < kMatchTol &&
                   std::abs(u(0, 0).real() - u(1, 1).real()) < kMatchTol &&
                   std::abs(u(0, 1).real() + u(1, 0).real()) < kMatchTol) {
            os_ << "ry(" << 2.0 * std::atan2(u(1, 0).real(), u(0, 0).real()) << ") q[" << t
                << "];\n";
        } else {
            const auto p = decompose(u);
            os_ << "u3(" << p.theta << "," << p.phi << "," << p.lambda << ") q[" << t << "];\n";
        }
    }

    void controlled_once(const Mat2 &u, int c, int t) {
        if (close(u, Mat2::Identity())) {
            return;
        }
        if (close(u, pauli_x())) {
            cx(c, t);
            return;
        }
        if (std::abs(u(0, 1)) < kMatchTol && std::abs(u(1, 0)) < kMatchTol &&
            std::abs(u(0, 0) - 1.0) < kMatchTol) {
            os_ << "cu1(" << std::arg(u(1, 1)) << ") q[" << c << "],q[" << t << "];\n";
            return;
        }
        const auto p = decompose(u);
        os_ << "cu3(" << p.theta << "," << p.phi << "," << p.lambda << ") q[" << c << "],q["
            << t << "];\n";
        if (std::abs(p.alpha) > kMatchTol) {
            os_ << "u1(" << p.alpha << ") q[" << c << "];\n";
        }
    }

    void controlled(const Mat2 &u, std::vector<int> controls, int t, std::span<const int> work) {
        const std::size_t n = controls.size();
        if (n == 0) {
            single(u, t);
            return;
        }
        if (n == 1) {
            controlled_once(u, controls[0], t);
            return;
        }
        if (n == 2 && close(u, pauli_x())) {
            os_ << "ccx q[" << controls[0] << "],q[" << controls[1] << "],q[" << t << "];\n";
            return;
        }
        if (n >= 3 && !work.empty()) {
            const int w = work.front();
            os_ << "ccx q[" << controls[0] << "],q[" << controls[1] << "],q[" << w << "];\n";
            std::vector<int> reduced{w};
            reduced.insert(reduced.end(), controls.begin() + 2, controls.end());
            controlled(u, std::move(reduced), t, work.subspan(1));
            os_ << "ccx q[" << controls[0] << "],q[" << controls[1] << "],q[" << w << "];\n";
            return;
        }
        const Mat2 v = unitary_sqrt(u);
        const int last = controls.back();
        controls.pop_back();
        controlled_once(v, last, t);
        controlled(pauli_x(), controls, last, work);
        controlled_once(v.adjoint(), last, t);
        controlled(pauli_x(), controls, last, work);
        controlled(v, controls, t, work);
    }

    std::ostream &os_;
    std::vector<int> work_;
};

std::string range_text(const std::vector<int> &qubits) {
    if (qubits.empty()) {
        return "none";
    }
    std::ostringstream os;
    os << "q[" << qubits.front() << ".." << qubits.back() << "]";
    return os.str();
}

} // namespace

void write_qasm(std::ostream &os, const Circuit &circuit) {
    const int n = circuit.num_qubits() - static_cast<int>(circuit.layout.work.size());
    const std::vector<int> work{n, n + 1};
    const auto &layout = circuit.layout;

    os << "OPENQASM 2.0;\n";
    os << "include \"qelib1.inc\";\n";
    os << "// Bethe state preparation, L=" << layout.length << " M=" << layout.num_down << '\n';
    os << "// qubit q is bit q of the basis index (little-endian); |0> = spin up\n";
    os << "// system " << range_text(layout.system) << ", labels "
       << range_text(layout.label_qubits()) << ", faucets " << range_text(layout.faucet)
       << ", work q[" << work[0] << "],q[" << work[1] << "]\n";
    os << "qreg q[" << n + 2 << "];\n";

    Emitter emit(os, work);
    std::size_t next_barrier = 0;
    for (std::size_t i = 0; i <= circuit.gates.size(); ++i) {
        while (next_barrier < circuit.barriers.size() &&
               circuit.barriers[next_barrier].position == i) {
            emit.comment(circuit.barriers[next_barrier].name);
            emit.barrier();
            ++next_barrier;
        }
        if (i < circuit.gates.size()) {
            emit.gate(circuit.gates[i]);
        }
    }
}

std::string to_qasm(const Circuit &circuit) {
    std::ostringstream os;
    write_qasm(os, circuit);
    return os.str();
}

} // namespace xxz
