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

#include <cstring>

#include "support/oracles.hpp"
#include "xxz/kernels.hpp"

namespace {

using cplx = std::complex<double>;

std::vector<cplx> random_run(oracle::Draw &draw, std::size_t n) {
    std::vector<cplx> v(n);
    for (auto &x : v) {
        x = {draw.uniform(-1, 1), draw.uniform(-1, 1)};
    }
    return v;
}

double max_diff(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

TEST(Kernels, ScalarTableAlwaysPresentAndFirst) {
    const auto all = xxz::available_kernels();
    ASSERT_FALSE(all.empty());
    EXPECT_STREQ(all.front()->name, "scalar");
    EXPECT_EQ(xxz::kernels_by_name("scalar"), &xxz::scalar_kernels());
    EXPECT_EQ(xxz::kernels_by_name("no-such-kernel"), nullptr);
}

TEST(Kernels, ActiveTableIsAvailable) {
    const auto all = xxz::available_kernels();
    const auto &active = xxz::active_kernels();
    EXPECT_NE(std::find(all.begin(), all.end(), &active), all.end());
}

// Every table must agree with the scalar reference on every operation,
// including odd lengths that exercise the vector tail.
TEST(Kernels, EveryTableMatchesScalarReference) {
    const auto &ref = xxz::scalar_kernels();
    oracle::Draw draw(42);
    for (const auto *table : xxz::available_kernels()) {
        SCOPED_TRACE(table->name);
        for (std::size_t n : {0U, 1U, 2U, 3U, 7U, 8U, 33U, 1024U}) {
            const auto a0 = random_run(draw, n);
            const auto b0 = random_run(draw, n);
            const cplx factor{draw.uniform(-2, 2), draw.uniform(-2, 2)};

            auto a_ref = a0;
            auto a_vec = a0;
            ref.scale(a_ref.data(), n, factor);
            table->scale(a_vec.data(), n, factor);
            EXPECT_LE(max_diff(a_ref, a_vec), 1e-14);

            const double m00 = draw.uniform(-1, 1);
            const double m01 = draw.uniform(-1, 1);
            const double m10 = draw.uniform(-1, 1);
            const double m11 = draw.uniform(-1, 1);
            auto x_ref = a0;
            auto y_ref = b0;
            auto x_vec = a0;
            auto y_vec = b0;
            ref.mix(x_ref.data(), y_ref.data(), n, m00, m01, m10, m11);
            table->mix(x_vec.data(), y_vec.data(), n, m00, m01, m10, m11);
            EXPECT_LE(max_diff(x_ref, x_vec), 1e-14);
            EXPECT_LE(max_diff(y_ref, y_vec), 1e-14);

            EXPECT_NEAR(table->norm_sq(a0.data(), n), ref.norm_sq(a0.data(), n),
                        1e-13 * std::max<double>(1.0, static_cast<double>(n)));
            const cplx ip_ref = ref.inner(a0.data(), b0.data(), n);
            const cplx ip_vec = table->inner(a0.data(), b0.data(), n);
            EXPECT_LE(std::abs(ip_ref - ip_vec),
                      1e-13 * std::max<double>(1.0, static_cast<double>(n)));
        }
    }
}

TEST(Kernels, ScalarInnerProductConjugatesLeft) {
    const std::vector<cplx> a{{0.0, 1.0}};
    const std::vector<cplx> b{{1.0, 0.0}};
    const cplx ip = xxz::scalar_kernels().inner(a.data(), b.data(), 1);
    EXPECT_EQ(ip, cplx(0.0, -1.0));
}

} // namespace
