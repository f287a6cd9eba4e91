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
 * Inner loops of the statevector engine over contiguous amplitude runs.
 *
 * A scalar table is always available. On x86-64 an AVX2+FMA table is chosen
 * at first use when the CPU supports it; setting XXZ_KERNELS=scalar (or
 * =avx2) overrides the choice.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace xxz {

struct KernelTable {
    const char *name;
    /// a[i] *= factor
    void (*scale)(std::complex<double> *a, std::size_t n,
                  std::complex<double> factor);
    /// (a, b) <- (m00 a + m01 b, m10 a + m11 b), element-wise
    void (*mix)(std::complex<double> *a, std::complex<double> *b,
                std::size_t n, double m00, double m01, double m10, double m11);
    double (*norm_sq)(const std::complex<double> *a, std::size_t n);
    /// sum conj(a[i]) b[i]
    std::complex<double> (*inner)(const std::complex<double> *a,
                                  const std::complex<double> *b,
                                  std::size_t n);
};

const KernelTable &scalar_kernels() noexcept;

/// Kernel tables usable on this machine, scalar first.
std::vector<const KernelTable *> available_kernels();

/// nullptr when the name is unknown or unsupported here.
const KernelTable *kernels_by_name(std::string_view name);

const KernelTable &active_kernels();

} // namespace xxz
