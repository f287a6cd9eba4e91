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

#pragma once

#include <ostream>
#include <string>

#include "xxz/circuit.hpp"

namespace xxz {

/**
 * Writes `circuit` as OpenQASM 2.0 over qelib1.inc gates only
 * (x, h, ry, u1, u3, cx, ccx, cu1, cu3).
 *
 * Two work qubits are appended after the layout. Multi-controlled gates are
 * lowered by computing the AND of the first controls into the work qubits
 * (a V-chain of Toffolis), then, if controls remain, by the recursive
 * square-root construction C^n(U) = C(V) C^{n-1}(X) C(V^dag) C^{n-1}(X)
 * C^{n-1}(V). Off-polarity controls are wrapped in X gates. The exported
 * unitary equals the simulated one up to a global phase.
 */
void write_qasm(std::ostream &os, const Circuit &circuit);

[[nodiscard]] std::string to_qasm(const Circuit &circuit);

} // namespace xxz
