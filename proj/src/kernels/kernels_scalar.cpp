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

#include "xxz/kernels.hpp"

namespace xxz {

namespace {

using cplx = std::complex<double>;

void scale(cplx *a, std::size_t n, cplx factor) {
    for (std::size_t i = 0; i < n; ++i) {
        a[i] *= factor;
    }
}

void mix(cplx *a, cplx *b, std::size_t n, double m00, double m01, double m10,
         double m11) {
    for (std::size_t i = 0; i < n; ++i) {
        const cplx x = a[i];
        const cplx y = b[i];
        a[i] = m00 * x + m01 * y;
        b[i] = m10 * x + m11 * y;
    }
}

double norm_sq(const cplx *a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    }
    return s;
}

cplx inner(const cplx *a, const cplx *b, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

constexpr KernelTable kScalar{"scalar", scale, mix, norm_sq, inner};

} // namespace

const KernelTable &scalar_kernels() noexcept { return kScalar; }

} // namespace xxz
