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

#include "xxz/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "xxz/error.hpp"

namespace xxz {

namespace {

constexpr double pi = std::numbers::pi;

// Roots are searched strictly inside (0, pi).
constexpr double kDomainMargin = 1e-12;
constexpr int kBracketCells = 256;

/// 2 atan(num / den) on the principal branch, with the 0/0 guard.
double half_angle_atan(double num, double den, const char *who) {
    if (den == 0.0) {
        if (num == 0.0) {
            throw SingularPhaseError(std::string(who) +
                                     ": numerator and denominator both zero");
        }
        return std::copysign(pi, num);
    }
    return 2.0 * std::atan(num / den);
}

/// d/dk theta(k, c) for fixed c.
double theta_dk(double k, double c, double delta) {
    const double half_diff = 0.5 * (k - c);
    const double half_sum = 0.5 * (k + c);
    const double num = delta * std::sin(half_diff);
    const double den = delta * std::cos(half_diff) - std::cos(half_sum);
    const double dnum = 0.5 * delta * std::cos(half_diff);
    const double dden =
        -0.5 * delta * std::sin(half_diff) + 0.5 * std::sin(half_sum);
    const double r2 = num * num + den * den;
    return r2 == 0.0 ? 0.0 : 2.0 * (dnum * den - num * dden) / r2;
}

/// d/dk theta(k, -k).
double self_theta_dk(double k, double delta) {
    const double num = delta * std::sin(k);
    const double den = delta * std::cos(k) - 1.0;
    const double r2 = num * num + den * den;
    return r2 == 0.0 ? 0.0 : 2.0 * (delta * delta - delta * std::cos(k)) / r2;
}

double phi_dk(double k, double field, double delta) {
    const double a = field - delta;
    const double c = std::cos(k);
    const double r2 = 1.0 + 2.0 * a * c + a * a;
    return r2 == 0.0 ? 0.0 : -2.0 * (a * c + a * a) / r2;
}

/// Scalar equation solved for one root per outer step. `frozen` holds the
/// previous iterate; in the self-consistent scheme slot `self` is skipped
/// together with the Theta(k, -k) term it cancels.
struct ScalarEquation {
    const ModelParams &params;
    std::span<const double> frozen;
    std::size_t self;
    bool self_consistent;
    double target;

    [[nodiscard]] double value(double k) const {
        double z = 2.0 * (params.length + 1) * k +
                   phi(k, params.h, params.delta) +
                   phi(k, params.h_prime, params.delta);
        if (!self_consistent) {
            z += theta(k, -k, params.delta);
        }
        for (std::size_t l = 0; l < frozen.size(); ++l) {
            if (self_consistent && l == self) {
                continue;
            }
            z -= theta(k, frozen[l], params.delta) +
                 theta(k, -frozen[l], params.delta);
        }
        return z - target;
    }

    [[nodiscard]] double slope(double k) const {
        double d = 2.0 * (params.length + 1) +
                   phi_dk(k, params.h, params.delta) +
                   phi_dk(k, params.h_prime, params.delta);
        if (!self_consistent) {
            d += self_theta_dk(k, params.delta);
        }
        for (std::size_t l = 0; l < frozen.size(); ++l) {
            if (self_consistent && l == self) {
                continue;
            }
            d -= theta_dk(k, frozen[l], params.delta) +
                 theta_dk(k, -frozen[l], params.delta);
        }
        return d;
    }
};

/// Newton steps kept inside a shrinking sign-change bracket [lo, hi].
double safeguarded_newton(const ScalarEquation &eq, double lo, double hi,
                          double f_lo) {
    // Orient so that f(lo) < 0.
    if (f_lo > 0.0) {
        std::swap(lo, hi);
    }
    double x = 0.5 * (lo + hi);
    double dx_old = std::abs(hi - lo);
    double dx = dx_old;
    double f = eq.value(x);
    double df = eq.slope(x);
    for (int it = 0; it < 200; ++it) {
        const bool newton_leaves =
            ((x - hi) * df - f) * ((x - lo) * df - f) > 0.0;
        const bool too_slow = std::abs(2.0 * f) > std::abs(dx_old * df);
        dx_old = dx;
        if (newton_leaves || too_slow) {
            dx = 0.5 * (hi - lo);
            x = lo + dx;
        } else {
            dx = f / df;
            x -= dx;
        }
        if (std::abs(dx) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                 std::max(1.0, std::abs(x))) {
            return x;
        }
        f = eq.value(x);
        if (f == 0.0) {
            return x;
        }
        df = eq.slope(x);
        if (f < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
    }
    return x;
}

/// Root of eq on (0, pi), or NaN when no sign change exists.
double solve_scalar(const ScalarEquation &eq) {
    const double a = kDomainMargin;
    const double b = pi - kDomainMargin;
    const double fa = eq.value(a);
    const double fb = eq.value(b);
    if ((fa < 0.0) != (fb < 0.0)) {
        return safeguarded_newton(eq, a, b, fa);
    }
    if (fa == 0.0) {
        return a;
    }
    // The branch jumps of Theta can leave both ends on one side; look for
    // the first interior sign change.
    double left = a;
    double f_left = fa;
    for (int c = 1; c <= kBracketCells; ++c) {
        const double right = a + (b - a) * c / kBracketCells;
        const double f_right = eq.value(right);
        if ((f_left < 0.0) != (f_right < 0.0)) {
            return safeguarded_newton(eq, left, right, f_left);
        }
        left = right;
        f_left = f_right;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::string format_numbers(std::span<const int> values) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < values.size(); ++i) {
        os << (i ? "," : "") << values[i];
    }
    os << '}';
    return os.str();
}

cplx expi(double angle) { return std::polar(1.0, angle); }

cplx pair_s(double k, double kp, double delta) {
    return 1.0 - 2.0 * delta * expi(kp) + expi(k + kp);
}

cplx pair_b(double k, double kp, double delta) {
    return pair_s(k, kp, delta) * pair_s(kp, -k, delta);
}

cplx boundary_beta(double k, const ModelParams &p) {
    return (1.0 + (p.h_prime - p.delta) * expi(-k)) *
           expi(static_cast<double>(p.length + 1) * k);
}

cplx plane_wave(std::span<const double> kappa, const SpinConfiguration &x) {
    double angle = 0.0;
    for (std::size_t j = 0; j < kappa.size(); ++j) {
        angle += kappa[j] * static_cast<double>(x.positions[j] + 1);
    }
    return expi(angle);
}

} // namespace

// -- validation --------------------------------------------------------------

void ModelParams::validate() const {
    if (!std::isfinite(delta) || !std::isfinite(h) || !std::isfinite(h_prime)) {
        throw ValidationError("couplings must be finite");
    }
    if (length < 2) {
        throw ValidationError("chain length must be at least 2");
    }
    if (num_down < 0 || num_down > length / 2) {
        throw ValidationError("num_down must lie in [0, floor(L/2)], got " +
                              std::to_string(num_down));
    }
}

QuantumNumbers::QuantumNumbers(std::vector<int> values)
    : values_(std::move(values)) {
    std::set<int> seen;
    for (int v : values_) {
        if (v < 1) {
            throw ValidationError("quantum numbers must be >= 1");
        }
        if (!seen.insert(v).second) {
            throw ValidationError("duplicate quantum number " +
                                  std::to_string(v));
        }
    }
}

void QuantumNumbers::validate_for(const ModelParams &params) const {
    if (static_cast<int>(values_.size()) != params.num_down) {
        throw ValidationError("expected " + std::to_string(params.num_down) +
                              " quantum numbers, got " +
                              std::to_string(values_.size()));
    }
    for (int v : values_) {
        if (v > params.length) {
            throw ValidationError("quantum number " + std::to_string(v) +
                                  " exceeds L");
        }
    }
}

void SignedRootSequence::validate() const {
    std::vector<bool> seen(roots.size(), false);
    if (entries.size() != roots.size()) {
        throw ValidationError("signed sequence length differs from root count");
    }
    for (const auto &e : entries) {
        if (e.index < 0 || static_cast<std::size_t>(e.index) >= roots.size() ||
            seen[static_cast<std::size_t>(e.index)]) {
            throw ValidationError("signed sequence indices are not a permutation");
        }
        seen[static_cast<std::size_t>(e.index)] = true;
        if (e.sign != 1 && e.sign != -1) {
            throw ValidationError("signs must be +1 or -1");
        }
    }
}

std::vector<double> SignedRootSequence::values() const {
    std::vector<double> out(entries.size());
    for (std::size_t j = 0; j < entries.size(); ++j) {
        out[j] = entries[j].sign *
                 roots[static_cast<std::size_t>(entries[j].index)];
    }
    return out;
}

int SignedRootSequence::parity() const {
    int p = 1;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].sign < 0) {
            p = -p;
        }
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            if (entries[i].index > entries[j].index) {
                p = -p;
            }
        }
    }
    return p;
}

void SpinConfiguration::validate(int length, int num_down) const {
    if (static_cast<int>(positions.size()) != num_down) {
        throw ValidationError("configuration has wrong number of down spins");
    }
    for (std::size_t j = 0; j < positions.size(); ++j) {
        if (positions[j] < 0 || positions[j] >= length) {
            throw ValidationError("down-spin position out of range");
        }
        if (j > 0 && positions[j] <= positions[j - 1]) {
            throw ValidationError("down-spin positions must strictly increase");
        }
    }
}

std::uint64_t SpinConfiguration::basis_index() const {
    std::uint64_t idx = 0;
    for (int x : positions) {
        idx |= std::uint64_t{1} << x;
    }
    return idx;
}

OracleState OracleState::normalized() const {
    if (norm == 0.0) {
        throw NullStateError("cannot normalize a zero state");
    }
    OracleState out = *this;
    for (auto &a : out.amplitudes) {
        a /= norm;
    }
    out.norm = 1.0;
    return out;
}

std::vector<cplx> OracleState::to_dense() const {
    std::vector<cplx> dense(std::size_t{1} << length, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < configurations.size(); ++i) {
        dense[configurations[i].basis_index()] = amplitudes[i];
    }
    return dense;
}

// -- phases ------------------------------------------------------------------

double theta(double k, double k_prime, double delta) {
    const double num = delta * std::sin(0.5 * (k - k_prime));
    const double den =
        delta * std::cos(0.5 * (k - k_prime)) - std::cos(0.5 * (k + k_prime));
    return half_angle_atan(num, den, "theta");
}

double phi(double k, double field, double delta) {
    const double a = field - delta;
    return -half_angle_atan(a * std::sin(k), 1.0 + a * std::cos(k), "phi");
}

double counting_function(double k, std::span<const double> roots,
                         const ModelParams &params) {
    const ScalarEquation eq{params, roots, 0, false, 0.0};
    return eq.value(k);
}

// -- roots -------------------------------------------------------------------

BetheSolution solve_bethe_roots(const QuantumNumbers &numbers,
                                const ModelParams &params,
                                const SolverOptions &options) {
    params.validate();
    numbers.validate_for(params);
    if (!(options.tol > 0.0)) {
        throw ValidationError("tolerance must be positive");
    }
    if (options.max_iter < 1) {
        throw ValidationError("max_iter must be positive");
    }

    const std::size_t m = numbers.size();
    const bool self_consistent =
        options.scheme == IterationScheme::SelfConsistent;
    std::vector<double> current(m);
    for (std::size_t j = 0; j < m; ++j) {
        current[j] = static_cast<double>(numbers[j]);
    }
    std::vector<double> next(m);

    int iterations = 0;
    bool converged = m == 0;
    while (!converged && iterations < options.max_iter) {
        ++iterations;
        double movement = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const ScalarEquation eq{params, current, j, self_consistent,
                                    2.0 * pi * numbers[j]};
            next[j] = solve_scalar(eq);
            if (std::isnan(next[j])) {
                throw ConvergenceError("no root of the counting equation for J=" +
                                           std::to_string(numbers[j]) +
                                           " in (0, pi)",
                                       current, iterations);
            }
            movement = std::max(movement, std::abs(next[j] - current[j]));
        }
        current.swap(next);
        converged = movement < options.tol;
    }
    if (!converged) {
        throw ConvergenceError("root iteration for J=" +
                                   format_numbers(numbers.values()) +
                                   " did not converge in " +
                                   std::to_string(options.max_iter) +
                                   " iterations",
                               current, iterations);
    }

    // Order by root, carrying the quantum numbers along.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return current[a] < current[b]; });
    BetheSolution sol;
    std::vector<int> sorted_numbers(m);
    sol.roots.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
        sol.roots[j] = current[order[j]];
        sorted_numbers[j] = numbers[order[j]];
    }
    sol.quantum_numbers = QuantumNumbers(std::move(sorted_numbers));

    const double edge = std::max(options.tol, 1e-10);
    for (std::size_t j = 0; j < m; ++j) {
        if (sol.roots[j] < edge || sol.roots[j] > pi - edge) {
            throw DegenerateSolutionError("root at the domain edge (0 or pi)",
                                          sol.roots, iterations);
        }
        if (j > 0 && sol.roots[j] - sol.roots[j - 1] < options.tol) {
            throw DegenerateSolutionError("two roots coincide", sol.roots,
                                          iterations);
        }
    }

    sol.iterations = iterations;
    sol.residual = bethe_residual(sol.roots, sol.quantum_numbers, params);
    // A fixed point sitting on a branch jump of Theta stops moving without
    // solving the equations; its residual is O(1).
    if (sol.residual > std::max(1e-8, 1e3 * options.tol)) {
        throw ConvergenceError("iteration for J=" +
                                   format_numbers(numbers.values()) +
                                   " settled on a branch discontinuity",
                               sol.roots, iterations);
    }
    sol.energy = energy(sol.roots, params);
    return sol;
}

BetheSolution solve_bethe_roots(const QuantumNumbers &numbers,
                                const ModelParams &params, double tol,
                                int max_iter) {
    SolverOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    return solve_bethe_roots(numbers, params, opts);
}

double energy(std::span<const double> roots, const ModelParams &params) {
    double e = -0.5 * ((params.length - 1) * params.delta + params.h +
                       params.h_prime);
    for (double k : roots) {
        e += 2.0 * (params.delta - std::cos(k));
    }
    return e;
}

double bethe_residual(std::span<const double> roots,
                      const QuantumNumbers &numbers, const ModelParams &params) {
    if (roots.size() != numbers.size()) {
        throw ValidationError("root and quantum-number counts differ");
    }
    double worst = 0.0;
    for (std::size_t j = 0; j < roots.size(); ++j) {
        const double z = counting_function(roots[j], roots, params);
        worst = std::max(worst, std::abs(z - 2.0 * pi * numbers[j]));
    }
    return worst;
}

// -- amplitudes --------------------------------------------------------------

cplx amplitude_from_values(std::span<const double> kappa,
                           const ModelParams &params) {
    cplx a{1.0, 0.0};
    for (std::size_t j = 0; j < kappa.size(); ++j) {
        a *= boundary_beta(-kappa[j], params);
    }
    for (std::size_t j = 0; j < kappa.size(); ++j) {
        for (std::size_t l = j + 1; l < kappa.size(); ++l) {
            a *= pair_b(-kappa[j], kappa[l], params.delta) * expi(-kappa[l]);
        }
    }
    return a;
}

cplx amplitude_A(const SignedRootSequence &seq, const ModelParams &params) {
    seq.validate();
    const auto kappa = seq.values();
    return amplitude_from_values(kappa, params);
}

double reflection_phase_sum(std::span<const double> roots, std::size_t j,
                            double delta) {
    double v = 0.0;
    for (std::size_t l = j + 1; l < roots.size(); ++l) {
        v += theta(-roots[j], roots[l], delta) + theta(roots[l], roots[j], delta);
    }
    return v;
}

std::vector<WavefunctionTerm>
wavefunction_terms(std::span<const double> roots, const ModelParams &params) {
    std::vector<WavefunctionTerm> terms;
    terms.reserve((std::size_t{1} << roots.size()) * factorial(static_cast<int>(roots.size())));
    for_each_signed_permutation(roots, [&](const SignedRootSequence &seq,
                                           int parity) {
        WavefunctionTerm t;
        t.kappa = seq.values();
        t.coefficient = static_cast<double>(parity) *
                        amplitude_from_values(t.kappa, params);
        terms.push_back(std::move(t));
    });
    return terms;
}

namespace {

cplx evaluate_terms(const std::vector<WavefunctionTerm> &terms,
                    const SpinConfiguration &x) {
    cplx sum{0.0, 0.0};
    for (const auto &t : terms) {
        sum += t.coefficient * plane_wave(t.kappa, x);
    }
    return sum;
}

} // namespace

cplx wavefunction_f(const SpinConfiguration &x, const BetheSolution &solution,
                    const ModelParams &params) {
    x.validate(params.length, static_cast<int>(solution.roots.size()));
    return evaluate_terms(wavefunction_terms(solution.roots, params), x);
}

OracleState direct_bethe_state(const BetheSolution &solution,
                               const ModelParams &params) {
    params.validate();
    const int m = static_cast<int>(solution.roots.size());
    if (m != params.num_down) {
        throw ValidationError("solution root count differs from num_down");
    }
    const auto terms = wavefunction_terms(solution.roots, params);
    OracleState state;
    state.length = params.length;
    double norm_sq = 0.0;
    double largest = 0.0;
    for (auto &pos : combinations(params.length, m)) {
        SpinConfiguration x{std::move(pos)};
        const cplx f = evaluate_terms(terms, x);
        norm_sq += std::norm(f);
        largest = std::max(largest, std::abs(f));
        state.configurations.push_back(std::move(x));
        state.amplitudes.push_back(f);
    }
    if (largest < 1e-14) {
        throw NullStateError("every Bethe wavefunction amplitude vanishes");
    }
    state.norm = std::sqrt(norm_sq);
    return state;
}

double classical_success_probability(const BetheSolution &solution,
                                     const ModelParams &params) {
    const int m = static_cast<int>(solution.roots.size());
    const auto terms = wavefunction_terms(solution.roots, params);
    const cplx a_id = amplitude_from_values(solution.roots, params);
    const double scale = std::norm(a_id);
    double total = 0.0;
    for (auto &pos : combinations(params.length, m)) {
        total += std::norm(evaluate_terms(terms, SpinConfiguration{std::move(pos)}));
    }
    const double labels =
        static_cast<double>(std::uint64_t{1} << m) * static_cast<double>(factorial(m));
    return total / scale /
           (labels * labels * static_cast<double>(binomial(params.length, m)));
}

// -- combinatorics -----------------------------------------------------------

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

std::uint64_t factorial(int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) {
        r *= static_cast<std::uint64_t>(i);
    }
    return r;
}

std::vector<std::vector<int>> combinations(int n, int k, int first) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) {
        return out;
    }
    std::vector<int> cur(static_cast<std::size_t>(k));
    std::iota(cur.begin(), cur.end(), 0);
    while (true) {
        auto shifted = cur;
        for (int &v : shifted) {
            v += first;
        }
        out.push_back(std::move(shifted));
        int i = k - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) {
            --i;
        }
        if (i < 0) {
            break;
        }
        ++cur[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) {
            cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

} // namespace xxz
