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

// Built with -mavx2 -mfma. Nothing here may run before the dispatcher has
// checked CPU support.

#include <immintrin.h>

#include "kernels_internal.hpp"

namespace xxz::detail {

namespace {

using cplx = std::complex<double>;

// One __m256d holds two complex numbers as (re0, im0, re1, im1).

inline __m256d load2(const cplx *p) {
    return _mm256_loadu_pd(reinterpret_cast<const double *>(p));
}

inline void store2(cplx *p, __m256d v) {
    _mm256_storeu_pd(reinterpret_cast<double *>(p), v);
}

void scale(cplx *a, std::size_t n, cplx factor) {
    const __m256d fr = _mm256_set1_pd(factor.real());
    const __m256d fi = _mm256_set1_pd(factor.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = load2(a + i);
        const __m256d swapped = _mm256_permute_pd(v, 0b0101);
        // (re*fr - im*fi, im*fr + re*fi)
        store2(a + i, _mm256_fmaddsub_pd(v, fr, _mm256_mul_pd(swapped, fi)));
    }
    for (; i < n; ++i) {
        a[i] *= factor;
    }
}

void mix(cplx *a, cplx *b, std::size_t n, double m00, double m01, double m10,
         double m11) {
    const __m256d c00 = _mm256_set1_pd(m00);
    const __m256d c01 = _mm256_set1_pd(m01);
    const __m256d c10 = _mm256_set1_pd(m10);
    const __m256d c11 = _mm256_set1_pd(m11);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d x = load2(a + i);
        const __m256d y = load2(b + i);
        store2(a + i, _mm256_fmadd_pd(c00, x, _mm256_mul_pd(c01, y)));
        store2(b + i, _mm256_fmadd_pd(c10, x, _mm256_mul_pd(c11, y)));
    }
    for (; i < n; ++i) {
        const cplx x = a[i];
        const cplx y = b[i];
        a[i] = m00 * x + m01 * y;
        b[i] = m10 * x + m11 * y;
    }
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double norm_sq(const cplx *a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = load2(a + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
    }
    return s;
}

cplx inner(const cplx *a, const cplx *b, std::size_t n) {
    // re: sum ar*br + ai*bi ; im: sum ar*bi - ai*br
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d x = load2(a + i);
        const __m256d y = load2(b + i);
        acc_re = _mm256_fmadd_pd(x, y, acc_re);
        // x * swap(y) = (ar*bi, ai*br); the odd lanes get subtracted below.
        acc_im = _mm256_fmadd_pd(x, _mm256_permute_pd(y, 0b0101), acc_im);
    }
    alignas(32) double im_lanes[4];
    _mm256_store_pd(im_lanes, acc_im);
    double re = hsum(acc_re);
    double im = (im_lanes[0] - im_lanes[1]) + (im_lanes[2] - im_lanes[3]);
    for (; i < n; ++i) {
        re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
        im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
    }
    return {re, im};
}

constexpr KernelTable kAvx2{"avx2", scale, mix, norm_sq, inner};

} // namespace

const KernelTable &avx2_kernels() noexcept { return kAvx2; }

} // namespace xxz::detail
