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

#include <cstdlib>

#include "kernels_internal.hpp"

namespace xxz {

namespace {

bool cpu_has_avx2_fma() {
#if defined(XXZ_HAVE_AVX2_KERNELS)
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable &select_kernels() {
    if (const char *forced = std::getenv("XXZ_KERNELS")) {
        if (const KernelTable *k = kernels_by_name(forced)) {
            return *k;
        }
    }
    const auto all = available_kernels();
    return *all.back();
}

} // namespace

std::vector<const KernelTable *> available_kernels() {
    std::vector<const KernelTable *> out{&scalar_kernels()};
#if defined(XXZ_HAVE_AVX2_KERNELS)
    if (cpu_has_avx2_fma()) {
        out.push_back(&detail::avx2_kernels());
    }
#endif
    return out;
}

const KernelTable *kernels_by_name(std::string_view name) {
    for (const KernelTable *k : available_kernels()) {
        if (name == k->name) {
            return k;
        }
    }
    return nullptr;
}

const KernelTable &active_kernels() {
    static const KernelTable &chosen = select_kernels();
    return chosen;
}

} // namespace xxz
