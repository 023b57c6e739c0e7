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

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "pfsim/bitvec.hpp"
#include "pfsim/errors.hpp"

namespace pfsim {

/// Exact i^k for k mod 4.
inline std::complex<double> i_pow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0:
            return {1.0, 0.0};
        case 1:
            return {0.0, 1.0};
        case 2:
            return {-1.0, 0.0};
        default:
            return {0.0, -1.0};
    }
}

/// An N-qubit Pauli operator in X-before-Z normal form:
///
///     P = i^phase * X^x_mask * Z^z_mask
///
/// where X^x = X_0^{x_0} X_1^{x_1} ... and likewise for Z. A qubit with both
/// bits set therefore carries the factor XZ = -iY, so the Hermitian Y has
/// phase 1 and, in general, P is Hermitian iff phase == popcount(x & z) mod 2.
class SignedPauli {
   public:
    SignedPauli() = default;
    explicit SignedPauli(std::size_t n) : x_(n), z_(n) {
    }
    SignedPauli(BitVec x, BitVec z, int phase = 0) : x_(std::move(x)), z_(std::move(z)), phase_(norm(phase)) {
        if (x_.size() != z_.size()) {
            throw DimensionError("SignedPauli: x and z masks differ in length");
        }
    }

    static SignedPauli identity(std::size_t n) {
        return SignedPauli(n);
    }
    static SignedPauli x_on(std::size_t n, std::size_t q) {
        SignedPauli p(n);
        p.x_.set(q, true);
        return p;
    }
    static SignedPauli z_on(std::size_t n, std::size_t q) {
        SignedPauli p(n);
        p.z_.set(q, true);
        return p;
    }
    /// Hermitian Y on qubit q, i.e. i * X_q Z_q.
    static SignedPauli y_on(std::size_t n, std::size_t q) {
        SignedPauli p(n);
        p.x_.set(q, true);
        p.z_.set(q, true);
        p.phase_ = 1;
        return p;
    }

    /// Parses literals like "+XIZ", "-iYY", "+i", "ZZ". Character k describes
    /// qubit k. Y denotes the Hermitian Pauli Y.
    static SignedPauli parse(std::string_view text);

    /// Inverse of parse: sign prefix is always one of "+", "-", "+i", "-i".
    std::string str() const;

    std::size_t n_qubits() const {
        return x_.size();
    }
    const BitVec &x() const {
        return x_;
    }
    const BitVec &z() const {
        return z_;
    }
    int phase() const {
        return phase_;
    }
    bool x_bit(std::size_t q) const {
        return x_[q];
    }
    bool z_bit(std::size_t q) const {
        return z_[q];
    }

    void set_phase(int phase) {
        phase_ = norm(phase);
    }
    void add_phase(int delta) {
        phase_ = norm(phase_ + delta);
    }
    void set_x(std::size_t q, bool v) {
        x_.set(q, v);
    }
    void set_z(std::size_t q, bool v) {
        z_.set(q, v);
    }
    void flip_x(std::size_t q) {
        x_.flip(q);
    }
    void flip_z(std::size_t q) {
        z_.flip(q);
    }

    /// Number of qubits carrying both an X and a Z factor.
    std::size_t y_count() const {
        return and_popcount(x_, z_);
    }
    bool is_hermitian() const {
        return (phase_ & 1) == static_cast<int>(y_count() & 1);
    }
    bool is_identity_up_to_phase() const {
        return x_.none() && z_.none();
    }
    /// Support as a mask over qubits.
    BitVec support() const {
        return x_ | z_;
    }
    std::size_t weight() const {
        return support().popcount();
    }

    /// Sign of a Hermitian Pauli relative to the unsigned product of I/X/Y/Z letters: +1 or -1.
    int hermitian_sign() const {
        if (!is_hermitian()) {
            throw ValidationError("hermitian_sign on non-Hermitian Pauli " + str());
        }
        int k = norm(phase_ - static_cast<int>(y_count() % 4));
        return k == 0 ? +1 : -1;
    }

    std::complex<double> phase_value() const {
        return i_pow(phase_);
    }

    friend bool operator==(const SignedPauli &a, const SignedPauli &b) {
        return a.phase_ == b.phase_ && a.x_ == b.x_ && a.z_ == b.z_;
    }
    friend bool operator<(const SignedPauli &a, const SignedPauli &b) {
        if (a.x_ == b.x_) {
            if (a.z_ == b.z_) {
                return a.phase_ < b.phase_;
            }
            return a.z_ < b.z_;
        }
        return a.x_ < b.x_;
    }

   private:
    static int norm(int k) {
        return ((k % 4) + 4) % 4;
    }

    BitVec x_;
    BitVec z_;
    int phase_ = 0;
};

inline void check_same_qubits(const SignedPauli &p, const SignedPauli &q) {
    if (p.n_qubits() != q.n_qubits()) {
        throw DimensionError("Pauli qubit counts differ: " + std::to_string(p.n_qubits()) + " vs " +
                             std::to_string(q.n_qubits()));
    }
}

/// Operator product p*q with exact phase.
///
/// X^a Z^b X^c Z^d = (-1)^{b.c} X^{a+c} Z^{b+d}.
inline SignedPauli pauli_mul(const SignedPauli &p, const SignedPauli &q) {
    check_same_qubits(p, q);
    int phase = p.phase() + q.phase() + 2 * static_cast<int>(and_popcount(p.z(), q.x()) & 1);
    return SignedPauli(p.x() ^ q.x(), p.z() ^ q.z(), phase);
}

/// In-place left-to-right accumulation: acc <- acc * q.
inline void pauli_mul_into(SignedPauli &acc, const SignedPauli &q) {
    acc = pauli_mul(acc, q);
}

/// True iff pq == qp.
inline bool commutes(const SignedPauli &p, const SignedPauli &q) {
    check_same_qubits(p, q);
    return ((and_popcount(p.x(), q.z()) + and_popcount(p.z(), q.x())) & 1) == 0;
}

/// Tensor product a (on the low qubits) with b (on the high qubits).
inline SignedPauli tensor(const SignedPauli &a, const SignedPauli &b) {
    std::size_t na = a.n_qubits();
    std::size_t nb = b.n_qubits();
    BitVec x(na + nb);
    BitVec z(na + nb);
    for (std::size_t k = 0; k < na; k++) {
        x.set(k, a.x_bit(k));
        z.set(k, a.z_bit(k));
    }
    for (std::size_t k = 0; k < nb; k++) {
        x.set(na + k, b.x_bit(k));
        z.set(na + k, b.z_bit(k));
    }
    return SignedPauli(std::move(x), std::move(z), a.phase() + b.phase());
}

inline SignedPauli SignedPauli::parse(std::string_view text) {
    std::size_t pos = 0;
    int k = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        if (text[pos] == '-') {
            k = 2;
        }
        pos++;
    }
    if (pos < text.size() && text[pos] == 'i') {
        k += 1;
        pos++;
    }
    std::size_t n = text.size() - pos;
    SignedPauli p(n);
    int ys = 0;
    for (std::size_t q = 0; q < n; q++) {
        switch (text[pos + q]) {
            case 'I':
            case '_':
                break;
            case 'X':
                p.x_.set(q, true);
                break;
            case 'Z':
                p.z_.set(q, true);
                break;
            case 'Y':
                p.x_.set(q, true);
                p.z_.set(q, true);
                ys++;
                break;
            default:
                throw ParseError("bad Pauli literal '" + std::string(text) + "'");
        }
    }
    p.phase_ = norm(k + ys);
    return p;
}

inline std::string SignedPauli::str() const {
    int k = norm(phase_ - static_cast<int>(y_count() % 4));
    static constexpr const char *kPrefix[] = {"+", "+i", "-", "-i"};
    std::string s = kPrefix[k];
    s.reserve(s.size() + n_qubits());
    for (std::size_t q = 0; q < n_qubits(); q++) {
        bool xb = x_[q];
        bool zb = z_[q];
        s.push_back(xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I'));
    }
    return s;
}

}  // namespace pfsim
