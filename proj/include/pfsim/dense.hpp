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

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "pfsim/bitvec.hpp"
#include "pfsim/errors.hpp"
#include "pfsim/input_model.hpp"
#include "pfsim/pauli.hpp"
#include "pfsim/tableau.hpp"

namespace pfsim {

/// Size limits for dense simulation.
struct DenseLimits {
    std::size_t max_pure_qubits = 12;
    std::size_t max_mixed_qubits = 10;
    /// If set, receives one line with the estimated allocation before each state is created.
    std::ostream *memory_log = nullptr;
};

inline DenseLimits &dense_limits() {
    static DenseLimits limits;
    return limits;
}

/// Bytes needed for a dense state of n qubits.
inline std::uint64_t dense_memory_estimate(std::size_t n, bool pure) {
    std::uint64_t dim = std::uint64_t{1} << n;
    return (pure ? dim : dim * dim) * sizeof(cplx);
}

namespace detail {

using Mat4 = std::array<cplx, 16>;

/// Applies a 2x2 matrix to bit `bit` of the flat index of `v`.
inline void apply_mat2(std::vector<cplx> &v, std::size_t bit, const Mat2 &m) {
    std::size_t stride = std::size_t{1} << bit;
    for (std::size_t i = 0; i < v.size(); i++) {
        if (i & stride) {
            continue;
        }
        cplx a = v[i], b = v[i | stride];
        v[i] = m[0] * a + m[1] * b;
        v[i | stride] = m[2] * a + m[3] * b;
    }
}

/// Applies a 4x4 matrix to bits (ba, bb); local basis index is a + 2b.
inline void apply_mat4(std::vector<cplx> &v, std::size_t ba, std::size_t bb, const Mat4 &m) {
    std::size_t sa = std::size_t{1} << ba, sb = std::size_t{1} << bb;
    for (std::size_t i = 0; i < v.size(); i++) {
        if ((i & sa) || (i & sb)) {
            continue;
        }
        std::size_t idx[4] = {i, i | sa, i | sb, i | sa | sb};
        cplx in[4] = {v[idx[0]], v[idx[1]], v[idx[2]], v[idx[3]]};
        for (int r = 0; r < 4; r++) {
            cplx acc = 0;
            for (int c = 0; c < 4; c++) {
                acc += m[4 * r + c] * in[c];
            }
            v[idx[r]] = acc;
        }
    }
}

inline Mat2 conj(const Mat2 &m) {
    return {std::conj(m[0]), std::conj(m[1]), std::conj(m[2]), std::conj(m[3])};
}

inline Mat4 conj(const Mat4 &m) {
    Mat4 r;
    for (int k = 0; k < 16; k++) {
        r[k] = std::conj(m[k]);
    }
    return r;
}

inline Mat2 gate_mat2(GateType t) {
    const cplx i(0.0, 1.0);
    switch (t) {
        case GateType::H:
            return {M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2};
        case GateType::S:
            return {1.0, 0.0, 0.0, i};
        case GateType::X:
            return {0.0, 1.0, 1.0, 0.0};
        case GateType::Y:
            return {0.0, -i, i, 0.0};
        case GateType::Z:
            return {1.0, 0.0, 0.0, -1.0};
        default:
            throw ValidationError("not a single-qubit gate");
    }
}

inline Mat4 gate_mat4(GateType t) {
    Mat4 m{};
    auto set = [&](int row, int col) { m[4 * row + col] = 1.0; };
    switch (t) {
        case GateType::CNOT:  // a controls b
            set(0, 0), set(3, 1), set(2, 2), set(1, 3);
            break;
        case GateType::CZ:
            set(0, 0), set(1, 1), set(2, 2), m[15] = -1.0;
            break;
        case GateType::SWAP:
            set(0, 0), set(2, 1), set(1, 2), set(3, 3);
            break;
        default:
            throw ValidationError("not a two-qubit gate");
    }
    return m;
}

}  // namespace detail

/// Dense pure or mixed state. Basis index bit q is the value of qubit q.
/// A density matrix is stored row-major, so as a flat vector its low n bits
/// index the column and its high n bits the row.
class DenseState {
   public:
    static DenseState zero_state(std::size_t n, bool pure = true) {
        DenseState s(n, pure);
        s.data_[0] = 1.0;
        return s;
    }

    static DenseState from_amplitudes(std::vector<cplx> amps) {
        std::size_t n = log2_exact(amps.size());
        DenseState s(n, true);
        s.data_ = std::move(amps);
        s.validate();
        return s;
    }

    static DenseState from_density(std::vector<cplx> rho) {
        std::size_t dim2 = rho.size();
        std::size_t n2 = log2_exact(dim2);
        if (n2 % 2 != 0) {
            throw DimensionError("density matrix must be square with power-of-two side");
        }
        DenseState s(n2 / 2, false);
        s.data_ = std::move(rho);
        s.validate();
        return s;
    }

    /// Tensor product of single-qubit inputs; input i is qubit i. Pure if every input is pure.
    static DenseState product(const std::vector<QubitInput> &inputs, bool force_mixed = false) {
        bool pure = !force_mixed;
        for (const auto &q : inputs) {
            pure = pure && q.is_pure();
        }
        DenseState s(inputs.size(), pure);
        s.data_.assign(1, 1.0);
        if (pure) {
            for (const auto &q : inputs) {
                auto a = q.amplitudes();
                std::vector<cplx> next(s.data_.size() * 2);
                for (std::size_t k = 0; k < s.data_.size(); k++) {
                    next[k] = s.data_[k] * a[0];
                    next[k + s.data_.size()] = s.data_[k] * a[1];
                }
                s.data_ = std::move(next);
            }
        } else {
            std::size_t dim = 1;
            for (const auto &q : inputs) {
                Mat2 r = q.density_matrix();
                std::size_t nd = dim * 2;
                std::vector<cplx> next(nd * nd);
                for (std::size_t row = 0; row < nd; row++) {
                    for (std::size_t col = 0; col < nd; col++) {
                        std::size_t hr = row / dim, hc = col / dim;
                        next[row * nd + col] = s.data_[(row % dim) * dim + (col % dim)] * r[2 * hr + hc];
                    }
                }
                s.data_ = std::move(next);
                dim = nd;
            }
        }
        return s;
    }

    std::size_t n_qubits() const {
        return n_;
    }
    bool is_pure() const {
        return pure_;
    }
    std::size_t dim() const {
        return std::size_t{1} << n_;
    }
    const std::vector<cplx> &data() const {
        return data_;
    }
    std::vector<cplx> &mutable_data() {
        return data_;
    }

    cplx amplitude(std::size_t index) const {
        require_pure();
        return data_.at(index);
    }
    cplx rho(std::size_t row, std::size_t col) const {
        if (pure_) {
            return data_.at(row) * std::conj(data_.at(col));
        }
        return data_.at(row * dim() + col);
    }

    /// Density-matrix copy of this state.
    DenseState to_mixed() const {
        if (!pure_) {
            return *this;
        }
        DenseState s(n_, false);
        std::size_t d = dim();
        for (std::size_t r = 0; r < d; r++) {
            for (std::size_t c = 0; c < d; c++) {
                s.data_[r * d + c] = data_[r] * std::conj(data_[c]);
            }
        }
        return s;
    }

    double trace() const {
        double t = 0;
        if (pure_) {
            for (const auto &a : data_) {
                t += std::norm(a);
            }
        } else {
            for (std::size_t k = 0; k < dim(); k++) {
                t += data_[k * dim() + k].real();
            }
        }
        return t;
    }

    void validate(double tol = 1e-12) const {
        if (std::abs(trace() - 1.0) > tol) {
            throw ValidationError("dense state has trace/norm " + std::to_string(trace()));
        }
        if (!pure_) {
            std::size_t d = dim();
            for (std::size_t r = 0; r < d; r++) {
                for (std::size_t c = r; c < d; c++) {
                    if (std::abs(data_[r * d + c] - std::conj(data_[c * d + r])) > tol) {
                        throw ValidationError("density matrix is not Hermitian");
                    }
                }
            }
        }
    }

    /// Applies a single-qubit unitary (U rho U^dagger for mixed states).
    void apply_1q(std::size_t q, const Mat2 &u) {
        check_qubit(q);
        detail::apply_mat2(data_, pure_ ? q : q + n_, u);
        if (!pure_) {
            detail::apply_mat2(data_, q, detail::conj(u));
        }
    }

    /// Applies a two-qubit unitary in local basis a + 2b.
    void apply_2q(std::size_t a, std::size_t b, const detail::Mat4 &u) {
        check_qubit(a);
        check_qubit(b);
        if (a == b) {
            throw ValidationError("two-qubit gate on a repeated qubit");
        }
        std::size_t off = pure_ ? 0 : n_;
        detail::apply_mat4(data_, a + off, b + off, u);
        if (!pure_) {
            detail::apply_mat4(data_, a, b, detail::conj(u));
        }
    }

    /// Applies the diagonal unitary |x> -> phase(x) |x>.
    void apply_diagonal(const std::function<cplx(std::size_t)> &phase) {
        std::size_t d = dim();
        std::vector<cplx> ph(d);
        for (std::size_t x = 0; x < d; x++) {
            ph[x] = phase(x);
        }
        if (pure_) {
            for (std::size_t x = 0; x < d; x++) {
                data_[x] *= ph[x];
            }
        } else {
            for (std::size_t r = 0; r < d; r++) {
                for (std::size_t c = 0; c < d; c++) {
                    data_[r * d + c] *= ph[r] * std::conj(ph[c]);
                }
            }
        }
    }

    void apply_gate(const Gate &g) {
        if (is_two_qubit(g.type)) {
            apply_2q(g.a, g.b, detail::gate_mat4(g.type));
        } else {
            apply_1q(g.a, detail::gate_mat2(g.type));
        }
    }

    /// Applies the Pauli P (P rho P^dagger for mixed states).
    void apply_pauli(const SignedPauli &p) {
        if (p.n_qubits() != n_) {
            throw DimensionError("Pauli size does not match the state");
        }
        for (std::size_t q = 0; q < n_; q++) {
            if (p.z_bit(q)) {
                apply_1q(q, detail::gate_mat2(GateType::Z));
            }
            if (p.x_bit(q)) {
                apply_1q(q, detail::gate_mat2(GateType::X));
            }
        }
        if (pure_) {
            cplx ph = p.phase_value();
            for (auto &a : data_) {
                a *= ph;
            }
        }
    }

   private:
    DenseState(std::size_t n, bool pure) : n_(n), pure_(pure) {
        const DenseLimits &lim = dense_limits();
        std::size_t cap = pure ? lim.max_pure_qubits : lim.max_mixed_qubits;
        if (n > cap) {
            throw CapacityError("dense " + std::string(pure ? "statevector" : "density matrix") + " of " +
                                std::to_string(n) + " qubits exceeds the limit of " + std::to_string(cap) +
                                " (needs " + std::to_string(dense_memory_estimate(n, pure)) + " bytes)");
        }
        if (lim.memory_log) {
            *lim.memory_log << "dense: allocating " << dense_memory_estimate(n, pure) << " bytes for " << n
                            << (pure ? "-qubit statevector\n" : "-qubit density matrix\n");
        }
        std::size_t d = std::size_t{1} << n;
        data_.assign(pure ? d : d * d, 0.0);
    }

    static std::size_t log2_exact(std::size_t len) {
        if (len == 0 || (len & (len - 1)) != 0) {
            throw DimensionError("dense data length " + std::to_string(len) + " is not a power of two");
        }
        std::size_t n = 0;
        while ((std::size_t{1} << n) < len) {
            n++;
        }
        return n;
    }

    void require_pure() const {
        if (!pure_) {
            throw ValidationError("amplitude access on a mixed state");
        }
    }

    void check_qubit(std::size_t q) const {
        if (q >= n_) {
            throw DimensionError("qubit " + std::to_string(q) + " out of range for " + std::to_string(n_) +
                                 "-qubit state");
        }
    }

    std::size_t n_;
    bool pure_;
    std::vector<cplx> data_;
};

inline DenseState apply_circuit(DenseState state, const GateList &gates) {
    if (gates.n_qubits != state.n_qubits()) {
        throw DimensionError("circuit and state qubit counts differ");
    }
    gates.validate();
    for (const Gate &g : gates.gates) {
        state.apply_gate(g);
    }
    return state;
}

/// Tr[rho (|y><y|_K (x) I)].
inline double exact_probability(const DenseState &state, const std::vector<std::size_t> &measured, const BitVec &y) {
    if (y.size() != measured.size()) {
        throw DimensionError("outcome length does not match the measured set");
    }
    std::size_t mask = 0, want = 0;
    for (std::size_t k = 0; k < measured.size(); k++) {
        if (measured[k] >= state.n_qubits()) {
            throw DimensionError("measured qubit out of range");
        }
        std::size_t bit = std::size_t{1} << measured[k];
        if (mask & bit) {
            throw ValidationError("measured qubit listed twice");
        }
        mask |= bit;
        if (y[k]) {
            want |= bit;
        }
    }
    double p = 0.0;
    for (std::size_t x = 0; x < state.dim(); x++) {
        if ((x & mask) == want) {
            p += state.is_pure() ? std::norm(state.data()[x]) : state.rho(x, x).real();
        }
    }
    return p;
}

/// Sum of |p(y) - q(y)| over a shared key set.
inline double l1_distance(const std::map<BitVec, double> &p, const std::map<BitVec, double> &q) {
    if (p.size() != q.size()) {
        throw ValidationError("l1_distance: key sets differ in size");
    }
    double total = 0.0;
    auto it = q.begin();
    for (const auto &[key, value] : p) {
        if (!(it->first == key)) {
            throw ValidationError("l1_distance: key " + key.str() + " missing from the second map");
        }
        total += std::abs(value - it->second);
        ++it;
    }
    return total;
}

/// Binary layout: "PFDS", uint32 n_qubits, uint32 pure flag, uint32 reserved,
/// then the data as little-endian (re, im) double pairs.
inline void write_dense_state(std::ostream &out, const DenseState &s) {
    auto put_u32 = [&](std::uint32_t v) {
        unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                              static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
        out.write(reinterpret_cast<const char *>(b), 4);
    };
    auto put_f64 = [&](double d) {
        std::uint64_t bits;
        std::memcpy(&bits, &d, 8);
        unsigned char b[8];
        for (int k = 0; k < 8; k++) {
            b[k] = static_cast<unsigned char>(bits >> (8 * k));
        }
        out.write(reinterpret_cast<const char *>(b), 8);
    };
    out.write("PFDS", 4);
    put_u32(static_cast<std::uint32_t>(s.n_qubits()));
    put_u32(s.is_pure() ? 1u : 0u);
    put_u32(0u);
    for (const cplx &a : s.data()) {
        put_f64(a.real());
        put_f64(a.imag());
    }
}

inline DenseState read_dense_state(std::istream &in) {
    auto get = [&](unsigned char *buf, std::size_t n) {
        if (!in.read(reinterpret_cast<char *>(buf), static_cast<std::streamsize>(n))) {
            throw ParseError("truncated dense state dump");
        }
    };
    unsigned char hdr[16];
    get(hdr, 16);
    if (std::memcmp(hdr, "PFDS", 4) != 0) {
        throw ParseError("bad dense state magic");
    }
    auto u32 = [&](int off) {
        return std::uint32_t{hdr[off]} | std::uint32_t{hdr[off + 1]} << 8 | std::uint32_t{hdr[off + 2]} << 16 |
               std::uint32_t{hdr[off + 3]} << 24;
    };
    std::uint32_t n = u32(4);
    bool pure = u32(8) != 0;
    std::size_t cap = pure ? dense_limits().max_pure_qubits : dense_limits().max_mixed_qubits;
    if (n > cap) {
        throw CapacityError("dense state dump of " + std::to_string(n) + " qubits exceeds the limit");
    }
    std::size_t d = std::size_t{1} << n;
    std::vector<cplx> data(pure ? d : d * d);
    for (auto &a : data) {
        unsigned char b[16];
        get(b, 16);
        double parts[2];
        for (int h = 0; h < 2; h++) {
            std::uint64_t bits = 0;
            for (int k = 0; k < 8; k++) {
                bits |= std::uint64_t{b[8 * h + k]} << (8 * k);
            }
            std::memcpy(&parts[h], &bits, 8);
        }
        a = {parts[0], parts[1]};
    }
    return pure ? DenseState::from_amplitudes(std::move(data)) : DenseState::from_density(std::move(data));
}

}  // namespace pfsim
