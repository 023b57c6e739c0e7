// Copyright 2026 The pfsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "pfsim/bitvec.hpp"

namespace pfsim {

using Rng = std::mt19937_64;

/// Independent per-trial stream: the engine is seeded from (master, index)
/// through a seed_seq, so trial k does not depend on how many draws trial k-1 made.
inline Rng stream_rng(std::uint64_t master_seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x9e3779b9u};
    return Rng(seq);
}

// Helpers below use raw engine output only, so results are identical across
// standard libraries (std distributions are implementation-defined).

inline bool coin(Rng &rng) {
    return (rng() >> 63) != 0;
}

inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound).
inline std::uint64_t uniform_below(Rng &rng, std::uint64_t bound) {
    // Rejection keeps it exactly uniform.
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    while (true) {
        std::uint64_t r = rng();
        if (r < limit) {
            return r % bound;
        }
    }
}

inline BitVec random_bits(Rng &rng, std::size_t n) {
    BitVec v(n);
    for (std::size_t k = 0; k < n; k++) {
        v.set(k, coin(rng));
    }
    return v;
}

/// Standard normal via Box-Muller on engine output.
inline double normal01(Rng &rng) {
    double u1 = uniform01(rng);
    double u2 = uniform01(rng);
    if (u1 <= 0.0) {
        u1 = 0x1.0p-53;
    }
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace pfsim
