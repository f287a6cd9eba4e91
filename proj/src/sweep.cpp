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

#include "xxz/sweep.hpp"

#include <algorithm>
#include <iomanip>

#include "xxz/error.hpp"

namespace xxz {

RunReport prepare_state(const QuantumNumbers &numbers, const ModelParams &params,
                        const SolverOptions &options) {
    const BetheSolution solution = solve_bethe_roots(numbers, params, options);
    const Circuit circuit = assemble_full(solution, params);
    return run_and_project(circuit, solution, params);
}

SweepTable sweep_spectrum(const ModelParams &params, const SolverOptions &options) {
    params.validate();
    SweepTable table;
    table.params = params;
    table.options = options;
    for (auto &subset : combinations(params.length, params.num_down, 1)) {
        QuantumNumbers numbers(std::move(subset));
        try {
            table.rows.push_back(prepare_state(numbers, params, options));
        } catch (const ConvergenceError &e) {
            table.skipped.push_back({numbers, e.what()});
        } catch (const SingularPhaseError &e) {
            table.skipped.push_back({numbers, e.what()});
        }
    }
    if (table.rows.empty()) {
        throw ConvergenceError("no quantum-number subset converged", {}, 0);
    }
    // Stable sort keeps lexicographic J order among equal energies.
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const RunReport &a, const RunReport &b) { return a.energy < b.energy; });
    return table;
}

void write_sweep_csv(std::ostream &os, const SweepTable &table) {
    const auto old_flags = os.flags();
    const auto old_precision = os.precision();
    os << std::setprecision(17);
    os << kSweepCsvHeader << '\n';
    for (const auto &row : table.rows) {
        const auto j = row.quantum_numbers.values();
        for (std::size_t i = 0; i < j.size(); ++i) {
            os << (i ? ";" : "") << j[i];
        }
        os << ',';
        for (std::size_t i = 0; i < row.roots.size(); ++i) {
            os << (i ? ";" : "") << row.roots[i];
        }
        os << ',' << row.energy << ',' << row.success_probability << ','
           << row.eigen_residual << ',' << row.oracle_fidelity << ',' << row.iterations << '\n';
    }
    os.flags(old_flags);
    os.precision(old_precision);
}

double min_success_probability(const SweepTable &table) {
    if (table.rows.empty()) {
        throw ValidationError("empty sweep table");
    }
    return std::min_element(table.rows.begin(), table.rows.end(),
                            [](const RunReport &a, const RunReport &b) {
                                return a.success_probability < b.success_probability;
                            })
        ->success_probability;
}

} // namespace xxz
