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

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "xxz/error.hpp"
#include "xxz/statevector.hpp"

namespace xxz {

namespace {

constexpr std::array<char, 4> kMagic{'B', 'F', 'S', 'V'};
constexpr std::uint32_t kVersion = 1;

template <typename T> void put_le(std::ostream &os, T value) {
    std::array<unsigned char, sizeof(T)> bytes{};
    std::memcpy(bytes.data(), &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    os.write(reinterpret_cast<const char *>(bytes.data()), sizeof(T));
}

template <typename T> T get_le(std::istream &is) {
    std::array<unsigned char, sizeof(T)> bytes{};
    if (!is.read(reinterpret_cast<char *>(bytes.data()), sizeof(T))) {
        throw ValidationError("state dump truncated");
    }
    if constexpr (std::endian::native == std::endian::big) {
        std::reverse(bytes.begin(), bytes.end());
    }
    T value;
    std::memcpy(&value, bytes.data(), sizeof(T));
    return value;
}

} // namespace

void write_state_dump(const std::filesystem::path &path,
                      const StateVector &state) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        throw ValidationError("cannot open " + path.string() + " for writing");
    }
    os.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(os, kVersion);
    put_le<std::uint32_t>(os, static_cast<std::uint32_t>(state.num_qubits()));
    put_le<std::uint32_t>(os, 0);
    for (const cplx &a : state.amplitudes()) {
        put_le<double>(os, a.real());
        put_le<double>(os, a.imag());
    }
    if (!os) {
        throw ValidationError("write to " + path.string() + " failed");
    }
}

StateVector read_state_dump(const std::filesystem::path &path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        throw ValidationError("cannot open " + path.string());
    }
    std::array<char, 4> magic{};
    if (!is.read(magic.data(), magic.size()) || magic != kMagic) {
        throw ValidationError(path.string() + " is not a state dump");
    }
    if (get_le<std::uint32_t>(is) != kVersion) {
        throw ValidationError("unsupported state dump version");
    }
    const auto n = static_cast<int>(get_le<std::uint32_t>(is));
    (void)get_le<std::uint32_t>(is);
    if (n < 1 || n > kMaxQubits) {
        throw CapacityError("state dump declares " + std::to_string(n) +
                            " qubits");
    }
    std::vector<cplx> amps(std::size_t{1} << n);
    for (auto &a : amps) {
        const double re = get_le<double>(is);
        const double im = get_le<double>(is);
        a = {re, im};
    }
    return StateVector(n, std::move(amps));
}

} // namespace xxz
