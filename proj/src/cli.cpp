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

#include "xxz/cli.hpp"

#include <CLI11.hpp>
#include <bit>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <random>
#include <sstream>

#include "xxz/bethe.hpp"
#include "xxz/circuit.hpp"
#include "xxz/error.hpp"
#include "xxz/hamiltonian.hpp"
#include "xxz/kernels.hpp"
#include "xxz/qasm.hpp"
#include "xxz/statevector.hpp"
#include "xxz/sweep.hpp"

namespace xxz {

namespace {

struct Flags {
    int length = 0;
    int num_down = 0;
    double delta = 0.5;
    double h = 0.1;
    double h_prime = 0.3;
    std::vector<int> quantum_numbers;
    double tol = 1e-12;
    int max_iter = 500;
    std::string scheme = "jacobi";
    std::string out;
    std::string dump;

    [[nodiscard]] ModelParams params() const {
        ModelParams p{delta, h, h_prime, length, num_down};
        p.validate();
        return p;
    }

    [[nodiscard]] SolverOptions options() const {
        SolverOptions o;
        o.tol = tol;
        o.max_iter = max_iter;
        o.scheme = scheme == "self-consistent" ? IterationScheme::SelfConsistent
                                               : IterationScheme::Jacobi;
        return o;
    }

    [[nodiscard]] QuantumNumbers numbers() const {
        QuantumNumbers j(quantum_numbers);
        j.validate_for(params());
        return j;
    }
};

void add_model_flags(CLI::App *cmd, Flags &f, bool needs_numbers) {
    cmd->add_option("--L", f.length, "chain length")->required();
    cmd->add_option("--M", f.num_down, "number of down spins")->required();
    cmd->add_option("--delta", f.delta, "anisotropy")->capture_default_str();
    cmd->add_option("--h", f.h, "field on site 0")->capture_default_str();
    cmd->add_option("--hprime", f.h_prime, "field on site L-1")->capture_default_str();
    cmd->add_option("--tol", f.tol, "root movement tolerance")->capture_default_str();
    cmd->add_option("--max-iter", f.max_iter, "iteration budget")->capture_default_str();
    cmd->add_option("--scheme", f.scheme, "root iteration scheme")
        ->check(CLI::IsMember({"jacobi", "self-consistent"}))
        ->capture_default_str();
    cmd->add_option("--out", f.out, "write the result here instead of stdout");
    if (needs_numbers) {
        cmd->add_option("--J", f.quantum_numbers, "quantum numbers, e.g. 2,3")->delimiter(',');
    }
}

std::string join(std::span<const double> values) {
    std::ostringstream os;
    os << std::setprecision(17);
    for (std::size_t i = 0; i < values.size(); ++i) {
        os << (i ? ";" : "") << values[i];
    }
    return os.str();
}

std::string join(std::span<const int> values) {
    std::ostringstream os;
    for (std::size_t i = 0; i < values.size(); ++i) {
        os << (i ? ";" : "") << values[i];
    }
    return os.str();
}

/// Runs `body` with the destination chosen by --out.
int emit(const Flags &f, std::ostream &out, const std::function<void(std::ostream &)> &body) {
    if (f.out.empty()) {
        body(out);
        return 0;
    }
    std::ofstream file(f.out, std::ios::binary);
    if (!file) {
        throw ValidationError("cannot open " + f.out);
    }
    body(file);
    return 0;
}

int run_solve(const Flags &f, std::ostream &out) {
    const auto sol = solve_bethe_roots(f.numbers(), f.params(), f.options());
    return emit(f, out, [&](std::ostream &os) {
        os << std::setprecision(17);
        os << "J " << join(sol.quantum_numbers.values()) << '\n';
        os << "roots " << join(sol.roots) << '\n';
        os << "energy " << sol.energy << '\n';
        os << "iterations " << sol.iterations << '\n';
        os << "residual " << sol.residual << '\n';
    });
}

int run_prepare(const Flags &f, std::ostream &out) {
    const auto report = prepare_state(f.numbers(), f.params(), f.options());
    if (!f.dump.empty()) {
        write_state_dump(f.dump, report.system_state);
    }
    return emit(f, out, [&](std::ostream &os) {
        os << std::setprecision(17);
        os << "J " << join(report.quantum_numbers.values()) << '\n';
        os << "roots " << join(report.roots) << '\n';
        os << "energy " << report.energy << '\n';
        os << "success_probability " << report.success_probability << '\n';
        os << "eigen_residual " << report.eigen_residual << '\n';
        os << "oracle_fidelity " << report.oracle_fidelity << '\n';
        os << "iterations " << report.iterations << '\n';
        os << "wall_time " << report.wall_time << '\n';
    });
}

int run_sweep(const Flags &f, std::ostream &out, std::ostream &err) {
    const auto table = sweep_spectrum(f.params(), f.options());
    for (const auto &s : table.skipped) {
        err << "skipped J=" << join(s.quantum_numbers.values()) << ": " << s.reason << '\n';
    }
    return emit(f, out, [&](std::ostream &os) { write_sweep_csv(os, table); });
}

int run_export(const Flags &f, std::ostream &out) {
    const auto params = f.params();
    const auto sol = solve_bethe_roots(f.numbers(), params, f.options());
    const auto circuit = assemble_full(sol, params);
    return emit(f, out, [&](std::ostream &os) { write_qasm(os, circuit); });
}

// -- selftest ------------------------------------------------------------------

struct Check {
    std::string name;
    std::function<std::string()> run; ///< empty string on success
};

std::string check_phase_identities() {
    std::mt19937_64 rng(20260415);
    std::uniform_real_distribution<double> mom(0.05, std::numbers::pi - 0.05);
    std::uniform_real_distribution<double> aniso(-0.9, 0.9);
    for (int i = 0; i < 200; ++i) {
        const double a = mom(rng);
        const double b = mom(rng);
        const double d = aniso(rng);
        if (std::abs(theta(a, b, d) + theta(b, a, d)) > 1e-12) {
            return "theta antisymmetry";
        }
        if (std::abs(std::remainder(theta(-a, b, d) - theta(-b, a, d), 2 * std::numbers::pi)) >
            1e-12) {
            return "theta reflection identity";
        }
    }
    return {};
}

std::string check_amplitude_ratios() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mom(0.05, std::numbers::pi - 0.05);
    std::uniform_real_distribution<double> coupling(-0.9, 0.9);
    for (int i = 0; i < 200; ++i) {
        ModelParams p{coupling(rng), coupling(rng), coupling(rng), 6, 3};
        std::vector<double> k{mom(rng), mom(rng), mom(rng)};
        const cplx base = amplitude_from_values(k, p);
        auto swapped = k;
        std::swap(swapped[0], swapped[1]);
        const cplx expected_swap = amplitude_from_values(swapped, p) *
                                   std::polar(1.0, theta(k[0], k[1], p.delta));
        if (std::abs(base - expected_swap) > 1e-12 * std::abs(base)) {
            return "permutation ratio";
        }
        auto negated = k;
        negated[1] = -k[1];
        const double angle = k[1] * (2.0 * p.length + 2.0) + phi(k[1], p.h_prime, p.delta) +
                             reflection_phase_sum(k, 1, p.delta);
        if (std::abs(amplitude_from_values(negated, p) - base * std::polar(1.0, angle)) >
            1e-12 * std::abs(base)) {
            return "negation ratio";
        }
    }
    return {};
}

std::string check_dicke() {
    for (int l = 2; l <= 6; ++l) {
        for (int m = 0; m <= std::min(3, l); ++m) {
            StateVector s(l);
            for (const auto &g : build_dicke_prep(l, m)) {
                apply_gate(s, g);
            }
            const double expected = 1.0 / std::sqrt(static_cast<double>(binomial(l, m)));
            for (std::uint64_t i = 0; i < s.dimension(); ++i) {
                const double want = std::popcount(i) == m ? expected : 0.0;
                if (std::abs(s[i] - cplx{want, 0.0}) > 1e-12) {
                    return "Dicke L=" + std::to_string(l) + " M=" + std::to_string(m);
                }
            }
        }
    }
    return {};
}

std::string check_pipeline() {
    const ModelParams p{0.5, 0.1, 0.3, 4, 2};
    const auto sol = solve_bethe_roots(QuantumNumbers({2, 3}), p);
    const auto report = run_and_project(assemble_full(sol, p), sol, p);
    if (report.eigen_residual > 1e-8) {
        return "eigen residual " + std::to_string(report.eigen_residual);
    }
    if (report.oracle_fidelity < 1.0 - 1e-10) {
        return "oracle fidelity";
    }
    if (std::abs(report.success_probability - classical_success_probability(sol, p)) > 1e-10) {
        return "success probability identity";
    }
    return {};
}

int run_selftest(std::ostream &out) {
    const std::vector<Check> checks{
        {"phase-identities", check_phase_identities},
        {"amplitude-ratios", check_amplitude_ratios},
        {"dicke", check_dicke},
        {"pipeline-L4-M2", check_pipeline},
    };
    out << "kernels " << active_kernels().name << '\n';
    int failures = 0;
    for (const auto &c : checks) {
        const std::string problem = c.run();
        out << (problem.empty() ? "PASS " : "FAIL ") << c.name;
        if (!problem.empty()) {
            out << " (" << problem << ")";
            ++failures;
        }
        out << '\n';
    }
    return failures == 0 ? 0 : 2;
}

} // namespace

int cli_main(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Bethe-state preparation for the open XXZ chain", "xxzbethe"};
    // --h is the boundary field, so help is long-form only.
    app.set_help_flag("--help", "print this help");
    app.require_subcommand(1);
    Flags f;
    auto *solve = app.add_subcommand("solve", "solve the Bethe equations for one J set");
    auto *prepare = app.add_subcommand("prepare", "run the preparation circuit for one J set");
    auto *sweep = app.add_subcommand("sweep", "run every J subset and print CSV");
    auto *qasm = app.add_subcommand("export-qasm", "print the circuit as OpenQASM 2.0");
    auto *selftest = app.add_subcommand("selftest", "run the built-in invariant checks");
    add_model_flags(solve, f, true);
    add_model_flags(prepare, f, true);
    prepare->add_option("--dump", f.dump, "write the prepared system state (BFSV)");
    add_model_flags(sweep, f, false);
    add_model_flags(qasm, f, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error kind=usage exit=1 message=\"" << e.what() << "\"\n";
        return 1;
    }

    try {
        if (solve->parsed()) {
            return run_solve(f, out);
        }
        if (prepare->parsed()) {
            return run_prepare(f, out);
        }
        if (sweep->parsed()) {
            return run_sweep(f, out, err);
        }
        if (qasm->parsed()) {
            return run_export(f, out);
        }
        if (selftest->parsed()) {
            return run_selftest(out);
        }
    } catch (const Error &e) {
        const int code = exit_code_for(e);
        err << "error kind=" << e.kind() << " exit=" << code << " message=\"" << e.what()
            << "\"\n";
        return code;
    }
    return 1;
}

} // namespace xxz
