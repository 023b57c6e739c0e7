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

#include <cstdint>
#include <string>
#include <vector>

#include "pfsim/errors.hpp"
#include "pfsim/pauli.hpp"

namespace pfsim {

enum class GateType : std::uint8_t { H, S, X, Y, Z, CNOT, CZ, SWAP };

inline bool is_two_qubit(GateType t) {
    return t == GateType::CNOT || t == GateType::CZ || t == GateType::SWAP;
}

inline const char *gate_name(GateType t) {
    switch (t) {
        case GateType::H:
            return "H";
        case GateType::S:
            return "S";
        case GateType::X:
            return "X";
        case GateType::Y:
            return "Y";
        case GateType::Z:
            return "Z";
        case GateType::CNOT:
            return "CNOT";
        case GateType::CZ:
            return "CZ";
        case GateType::SWAP:
            return "SWAP";
    }
    return "?";
}

struct Gate {
    GateType type;
    std::uint32_t a;
    std::uint32_t b = 0;  // second operand (target for CNOT); unused for single-qubit gates

    friend bool operator==(const Gate &, const Gate &) = default;
};

/// Ordered Clifford gate sequence on a fixed register. Gates run in list order.
struct GateList {
    std::size_t n_qubits = 0;
    std::vector<Gate> gates;

    void validate() const {
        for (std::size_t k = 0; k < gates.size(); k++) {
            const Gate &g = gates[k];
            if (g.a >= n_qubits || (is_two_qubit(g.type) && g.b >= n_qubits)) {
                throw ValidationError("gate " + std::to_string(k) + " (" + gate_name(g.type) +
                                      ") addresses a qubit outside the " + std::to_string(n_qubits) +
                                      "-qubit register");
            }
            if (is_two_qubit(g.type) && g.a == g.b) {
                throw ValidationError("gate " + std::to_string(k) + " (" + gate_name(g.type) +
                                      ") uses the same qubit twice");
            }
        }
    }

    friend bool operator==(const GateList &, const GateList &) = default;
};

/// Replaces p by g p g^dagger. Phase bookkeeping follows the X-before-Z normal form.
inline void conjugate_by_gate(SignedPauli &p, const Gate &g) {
    const std::size_t a = g.a;
    const std::size_t b = g.b;
    switch (g.type) {
        case GateType::H: {
            bool x = p.x_bit(a);
            bool z = p.z_bit(a);
            p.set_x(a, z);
            p.set_z(a, x);
            if (x && z) {
                p.add_phase(2);
            }
            break;
        }
        case GateType::S: {
            // X -> iXZ, Z -> Z.
            if (p.x_bit(a)) {
                p.flip_z(a);
                p.add_phase(1);
            }
            break;
        }
        case GateType::X:
            if (p.z_bit(a)) {
                p.add_phase(2);
            }
            break;
        case GateType::Z:
            if (p.x_bit(a)) {
                p.add_phase(2);
            }
            break;
        case GateType::Y:
            if (p.x_bit(a) != p.z_bit(a)) {
                p.add_phase(2);
            }
            break;
        case GateType::CNOT: {
            // X_c -> X_c X_t, Z_t -> Z_c Z_t; no reordering needed.
            if (p.x_bit(a)) {
                p.flip_x(b);
            }
            if (p.z_bit(b)) {
                p.flip_z(a);
            }
            break;
        }
        case GateType::CZ: {
            // X_a -> X_a Z_b, X_b -> Z_a X_b; sorting Z_b past X_b costs (-1)^{x_a x_b}.
            bool xa = p.x_bit(a);
            bool xb = p.x_bit(b);
            if (xa && xb) {
                p.add_phase(2);
            }
            if (xb) {
                p.flip_z(a);
            }
            if (xa) {
                p.flip_z(b);
            }
            break;
        }
        case GateType::SWAP: {
            bool xa = p.x_bit(a), za = p.z_bit(a);
            p.set_x(a, p.x_bit(b));
            p.set_z(a, p.z_bit(b));
            p.set_x(b, xa);
            p.set_z(b, za);
            break;
        }
    }
}

/// Conjugation action P -> U P U^dagger of a Clifford unitary U (modulo global
/// phase), stored as the images of X_q and Z_q for every qubit q.
class CliffordTableau {
   public:
    CliffordTableau() = default;
    explicit CliffordTableau(std::size_t n) {
        xs_.reserve(n);
        zs_.reserve(n);
        for (std::size_t q = 0; q < n; q++) {
            xs_.push_back(SignedPauli::x_on(n, q));
            zs_.push_back(SignedPauli::z_on(n, q));
        }
    }

    static CliffordTableau identity(std::size_t n) {
        return CliffordTableau(n);
    }

    /// Builds from explicit generator images; validates the tableau invariants.
    static CliffordTableau from_images(std::vector<SignedPauli> x_images, std::vector<SignedPauli> z_images) {
        CliffordTableau t;
        t.xs_ = std::move(x_images);
        t.zs_ = std::move(z_images);
        t.validate();
        return t;
    }

    std::size_t n_qubits() const {
        return xs_.size();
    }
    const SignedPauli &x_image(std::size_t q) const {
        return xs_[q];
    }
    const SignedPauli &z_image(std::size_t q) const {
        return zs_[q];
    }

    /// Throws ValidationError unless every image is Hermitian and the images
    /// satisfy the canonical commutation relations.
    void validate() const {
        std::size_t n = xs_.size();
        if (zs_.size() != n) {
            throw ValidationError("tableau has mismatched X/Z image counts");
        }
        auto image = [&](std::size_t k) -> const SignedPauli & { return k < n ? xs_[k] : zs_[k - n]; };
        for (std::size_t k = 0; k < 2 * n; k++) {
            if (image(k).n_qubits() != n) {
                throw ValidationError("tableau image has wrong qubit count");
            }
            if (!image(k).is_hermitian()) {
                throw ValidationError("tableau image " + image(k).str() + " is not Hermitian");
            }
            if (image(k).is_identity_up_to_phase()) {
                throw ValidationError("tableau image is proportional to the identity");
            }
        }
        for (std::size_t a = 0; a < 2 * n; a++) {
            for (std::size_t b = a + 1; b < 2 * n; b++) {
                bool should_anticommute = (b == a + n);
                if (commutes(image(a), image(b)) == should_anticommute) {
                    throw ValidationError("tableau images violate the commutation relations at generators " +
                                          std::to_string(a) + ", " + std::to_string(b));
                }
            }
        }
    }

    /// Applies gate g after the current unitary: U <- g U.
    void append(const Gate &g) {
        for (auto &p : xs_) {
            conjugate_by_gate(p, g);
        }
        for (auto &p : zs_) {
            conjugate_by_gate(p, g);
        }
    }

    friend bool operator==(const CliffordTableau &, const CliffordTableau &) = default;

   private:
    std::vector<SignedPauli> xs_;
    std::vector<SignedPauli> zs_;
};

/// U p U^dagger, composing generator images in normal-form order.
inline SignedPauli conjugate(const CliffordTableau &u, const SignedPauli &p) {
    std::size_t n = u.n_qubits();
    if (p.n_qubits() != n) {
        throw DimensionError("conjugate: tableau has " + std::to_string(n) + " qubits, Pauli has " +
                             std::to_string(p.n_qubits()));
    }
    SignedPauli acc = SignedPauli::identity(n);
    acc.set_phase(p.phase());
    const BitVec &x = p.x();
    for (std::size_t q = x.find_first(); q < n; q = x.find_next(q + 1)) {
        pauli_mul_into(acc, u.x_image(q));
    }
    const BitVec &z = p.z();
    for (std::size_t q = z.find_first(); q < n; q = z.find_next(q + 1)) {
        pauli_mul_into(acc, u.z_image(q));
    }
    return acc;
}

/// Tableau of the circuit; the first gate acts first.
inline CliffordTableau from_gates(const GateList &g) {
    g.validate();
    CliffordTableau t(g.n_qubits);
    for (const Gate &gate : g.gates) {
        t.append(gate);
    }
    return t;
}

/// Tableau of running `first` and then `second`.
inline CliffordTableau compose(const CliffordTableau &first, const CliffordTableau &second) {
    std::size_t n = first.n_qubits();
    if (second.n_qubits() != n) {
        throw DimensionError("compose: qubit counts differ");
    }
    std::vector<SignedPauli> xs;
    std::vector<SignedPauli> zs;
    for (std::size_t q = 0; q < n; q++) {
        xs.push_back(conjugate(second, first.x_image(q)));
        zs.push_back(conjugate(second, first.z_image(q)));
    }
    return CliffordTableau::from_images(std::move(xs), std::move(zs));
}

namespace detail {

inline void push_inverse(std::vector<Gate> &out, const Gate &g) {
    if (g.type == GateType::S) {
        // S^dagger = S^3
        out.push_back(g);
        out.push_back(g);
        out.push_back(g);
    } else {
        out.push_back(g);
    }
}

}  // namespace detail

/// Gate sequence G with from_gates(G) == u exactly (signs included).
///
/// Works qubit by qubit: clears the X image of qubit q down to +X_q and the Z
/// image down to +Z_q using gates on qubits >= q, then emits the inverse of the
/// reduction sequence. Uses O(n^2) gates.
inline GateList synthesize(const CliffordTableau &u) {
    u.validate();
    const std::size_t n = u.n_qubits();
    CliffordTableau work = u;
    std::vector<Gate> reduction;
    auto apply = [&](GateType t, std::size_t a, std::size_t b = 0) {
        Gate g{t, static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
        work.append(g);
        reduction.push_back(g);
    };

    for (std::size_t q = 0; q < n; q++) {
        // Turn every non-identity factor of the X image into an X.
        {
            SignedPauli p = work.x_image(q);
            for (std::size_t j = q; j < n; j++) {
                bool x = p.x_bit(j), z = p.z_bit(j);
                if (x && z) {
                    apply(GateType::S, j);
                } else if (z) {
                    apply(GateType::H, j);
                }
            }
        }
        // Collect the X support onto qubit q.
        {
            const SignedPauli &p = work.x_image(q);
            if (!p.x_bit(q)) {
                std::size_t j = p.x().find_next(q + 1);
                apply(GateType::SWAP, q, j);
            }
        }
        {
            SignedPauli p = work.x_image(q);
            for (std::size_t j = q + 1; j < n; j++) {
                if (p.x_bit(j)) {
                    apply(GateType::CNOT, q, j);
                }
            }
        }
        // X image is now +-X_q; rotate it to +-Z_q so the Z image must carry X_q.
        apply(GateType::H, q);
        {
            SignedPauli zq = work.z_image(q);
            for (std::size_t j = q + 1; j < n; j++) {
                bool x = zq.x_bit(j), z = zq.z_bit(j);
                if (x && z) {
                    apply(GateType::S, j);
                } else if (z) {
                    apply(GateType::H, j);
                }
            }
        }
        {
            SignedPauli zq = work.z_image(q);
            for (std::size_t j = q + 1; j < n; j++) {
                if (zq.x_bit(j)) {
                    apply(GateType::CNOT, q, j);
                }
            }
        }
        if (work.z_image(q).z_bit(q)) {
            apply(GateType::S, q);
        }
        apply(GateType::H, q);
        if (work.x_image(q).hermitian_sign() < 0) {
            apply(GateType::Z, q);
        }
        if (work.z_image(q).hermitian_sign() < 0) {
            apply(GateType::X, q);
        }
    }
    if (!(work == CliffordTableau(n))) {
        throw InternalConsistencyError("synthesize: reduction did not reach the identity tableau");
    }

    GateList out;
    out.n_qubits = n;
    for (auto it = reduction.rbegin(); it != reduction.rend(); ++it) {
        detail::push_inverse(out.gates, *it);
    }
    return out;
}

}  // namespace pfsim
