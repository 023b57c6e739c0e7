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

#include <vector>

#include "pfsim/f2.hpp"
#include "pfsim/rng.hpp"
#include "pfsim/tableau.hpp"

namespace pfsim {

/// Uniformly random element of the n-qubit Clifford group modulo global phase.
///
/// Chooses the images of X_0, Z_0, X_1, Z_1, ... in turn. At step q the pair
/// (X_q', Z_q') must lie in the symplectic complement W of everything chosen
/// so far, a 2(n-q)-dimensional space. X_q' is drawn uniformly from W \ {0}
/// and Z_q' uniformly from {w in W : w anticommutes with X_q'}, both by
/// sampling coordinates in an explicit basis of W. Every image then gets an
/// independent random sign. Each tableau is hit with probability
/// 1 / prod_q [2 (4^{n-q} - 1) 4^{n-q}], i.e. uniformly.
inline CliffordTableau random_clifford(std::size_t n, Rng &rng) {
    if (n == 0) {
        throw DomainError("random_clifford needs at least one qubit");
    }
    const std::size_t dim = 2 * n;
    // Symplectic vectors are laid out as (x | z).
    std::vector<BitVec> chosen;
    std::vector<SignedPauli> xs;
    std::vector<SignedPauli> zs;

    auto to_pauli = [&](const BitVec &v, bool negative) {
        BitVec x(n), z(n);
        for (std::size_t k = 0; k < n; k++) {
            x.set(k, v[k]);
            z.set(k, v[n + k]);
        }
        SignedPauli p(std::move(x), std::move(z));
        p.set_phase(static_cast<int>(p.y_count() % 4) + (negative ? 2 : 0));
        return p;
    };
    auto symplectic = [&](const BitVec &a, const BitVec &b) {
        bool s = false;
        for (std::size_t k = 0; k < n; k++) {
            s ^= (a[k] && b[n + k]) != (a[n + k] && b[k]);
        }
        return s;
    };

    for (std::size_t q = 0; q < n; q++) {
        // Rows are the "swapped" chosen vectors so that row . v == omega(chosen, v).
        F2Matrix constraints(chosen.size(), dim);
        for (std::size_t r = 0; r < chosen.size(); r++) {
            for (std::size_t k = 0; k < n; k++) {
                constraints.set(r, k, chosen[r][n + k]);
                constraints.set(r, n + k, chosen[r][k]);
            }
        }
        auto sol = f2_solve(constraints, BitVec(chosen.size()));
        const std::vector<BitVec> &basis = sol->kernel_basis;

        auto combine = [&](const BitVec &coeffs) {
            BitVec v(dim);
            for (std::size_t k = 0; k < basis.size(); k++) {
                if (coeffs[k]) {
                    v ^= basis[k];
                }
            }
            return v;
        };
        BitVec xv;
        do {
            xv = combine(random_bits(rng, basis.size()));
        } while (xv.none());
        BitVec zv;
        do {
            zv = combine(random_bits(rng, basis.size()));
        } while (!symplectic(xv, zv));

        bool sx = coin(rng);
        bool sz = coin(rng);
        xs.push_back(to_pauli(xv, sx));
        zs.push_back(to_pauli(zv, sz));
        chosen.push_back(std::move(xv));
        chosen.push_back(std::move(zv));
    }
    return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

}  // namespace pfsim
