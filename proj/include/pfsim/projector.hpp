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
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "pfsim/errors.hpp"
#include "pfsim/f2.hpp"
#include "pfsim/pauli.hpp"

namespace pfsim {

/// A value of the form i^phase * 2^exponent, or exactly zero.
struct ExactValue {
    bool zero = true;
    int phase = 0;
    int exponent = 0;

    std::complex<double> value() const {
        if (zero) {
            return {0.0, 0.0};
        }
        return i_pow(phase) * std::ldexp(1.0, exponent);
    }
};

/// Evaluates Tr[ prod_i (I + g_i)/2 * q * (|y><y|_K (x) I) ] for a fixed list of
/// commuting Hermitian generators g_i and a fixed measured set K.
///
/// Expanding both projectors, the trace is 2^{N-r-k} times the sum, over
/// subsets S of generators for which g_S q is a Z-string supported on K, of
/// that string's phase times (-1)^{y.z}. The admissible S form a coset of the
/// relation kernel {v : g_v is a Z-string on K}; on that kernel the summand is
/// a +-1 character, so the sum is either |kernel| times the base-point value or
/// zero. Everything depending only on (gens, K) is reduced once up front, so a
/// query costs O(N^2 / 64) word operations.
class StabilizerProjector {
   public:
    StabilizerProjector(std::vector<SignedPauli> gens, std::size_t n_qubits, std::vector<std::size_t> measured)
        : n_(n_qubits), gens_(std::move(gens)), measured_(std::move(measured)), in_k_(n_qubits) {
        for (std::size_t q : measured_) {
            if (q >= n_) {
                throw DimensionError("measured qubit " + std::to_string(q) + " outside register of " +
                                     std::to_string(n_));
            }
            if (in_k_[q]) {
                throw ValidationError("measured qubit " + std::to_string(q) + " listed twice");
            }
            in_k_.set(q, true);
        }
        for (std::size_t q = 0; q < n_; q++) {
            if (!in_k_[q]) {
                outside_.push_back(q);
            }
        }
        for (const auto &g : gens_) {
            if (g.n_qubits() != n_) {
                throw DimensionError("generator " + g.str() + " has the wrong qubit count");
            }
            if (!g.is_hermitian()) {
                throw ValidationError("generator " + g.str() + " is not Hermitian");
            }
        }
        for (std::size_t a = 0; a < gens_.size(); a++) {
            for (std::size_t b = a + 1; b < gens_.size(); b++) {
                if (!commutes(gens_[a], gens_[b])) {
                    throw ContractViolation("generators " + gens_[a].str() + " and " + gens_[b].str() +
                                            " anticommute");
                }
            }
        }

        SpanReducer red(dim(), gens_.size());
        for (const auto &g : gens_) {
            red.insert(constraint_vector(g));
        }
        reducer_ = std::move(red);
        for (const BitVec &v : reducer_->dependencies()) {
            SignedPauli gv = product(v);
            if (gv.x().any() || !(gv.z() & outside_mask()).none()) {
                throw InternalConsistencyError("relation kernel element is not a Z-string on K");
            }
            kernel_.push_back({gv.phase() == 2, gv.z().gather(measured_)});
        }
        // Base 2-exponent before the kernel correction: N - r - k + dim ker.
        base_exponent_ = static_cast<int>(n_) - static_cast<int>(gens_.size()) -
                         static_cast<int>(measured_.size()) + static_cast<int>(kernel_.size());
    }

    std::size_t n_qubits() const {
        return n_;
    }
    const std::vector<SignedPauli> &generators() const {
        return gens_;
    }
    const std::vector<std::size_t> &measured() const {
        return measured_;
    }

    /// True if some product of generators equals -I, making the projector zero.
    /// Equivalently, no outcome y satisfies every kernel character.
    bool inconsistent() const {
        F2Matrix rows(kernel_.size(), measured_.size());
        BitVec rhs(kernel_.size());
        for (std::size_t j = 0; j < kernel_.size(); j++) {
            rows.row(j) = kernel_[j].on_k;
            rhs.set(j, kernel_[j].negative);
        }
        return !f2_solve(rows, rhs).has_value();
    }

    ExactValue exact(const SignedPauli &q, const BitVec &y) const {
        if (q.n_qubits() != n_) {
            throw DimensionError("operator " + q.str() + " has the wrong qubit count");
        }
        if (y.size() != measured_.size()) {
            throw DimensionError("outcome has " + std::to_string(y.size()) + " bits, measured set has " +
                                 std::to_string(measured_.size()));
        }
        for (const auto &g : gens_) {
            if (!commutes(g, q)) {
                throw ContractViolation("operator " + q.str() + " anticommutes with generator " + g.str());
            }
        }
        ExactValue out;
        for (const auto &k : kernel_) {
            if (k.negative != dot(k.on_k, y)) {
                return out;
            }
        }
        auto subset = reducer_->express(constraint_vector(q));
        if (!subset) {
            return out;
        }
        SignedPauli base = product(*subset);
        pauli_mul_into(base, q);
        int phase = base.phase() + (dot(base.z().gather(measured_), y) ? 2 : 0);
        out.zero = false;
        out.phase = ((phase % 4) + 4) % 4;
        out.exponent = base_exponent_;
        return out;
    }

    std::complex<double> expectation(const SignedPauli &q, const BitVec &y) const {
        return exact(q, y).value();
    }

   private:
    struct KernelChar {
        bool negative;
        BitVec on_k;
    };

    std::size_t dim() const {
        return n_ + outside_.size();
    }

    BitVec outside_mask() const {
        BitVec m(n_);
        for (std::size_t q : outside_) {
            m.set(q, true);
        }
        return m;
    }

    // (x bits | z bits on qubits outside K): zero iff the Pauli is a Z-string on K.
    BitVec constraint_vector(const SignedPauli &p) const {
        BitVec v(dim());
        const BitVec &x = p.x();
        for (std::size_t q = x.find_first(); q < n_; q = x.find_next(q + 1)) {
            v.set(q, true);
        }
        for (std::size_t k = 0; k < outside_.size(); k++) {
            if (p.z_bit(outside_[k])) {
                v.set(n_ + k, true);
            }
        }
        return v;
    }

    SignedPauli product(const BitVec &subset) const {
        SignedPauli acc = SignedPauli::identity(n_);
        for (std::size_t i = subset.find_first(); i < subset.size(); i = subset.find_next(i + 1)) {
            pauli_mul_into(acc, gens_[i]);
        }
        return acc;
    }

    std::size_t n_;
    std::vector<SignedPauli> gens_;
    std::vector<std::size_t> measured_;
    BitVec in_k_;
    std::vector<std::size_t> outside_;
    std::optional<SpanReducer> reducer_;
    std::vector<KernelChar> kernel_;
    int base_exponent_ = 0;
};

/// One-shot form of StabilizerProjector::expectation.
inline std::complex<double> projector_expectation(const std::vector<SignedPauli> &gens, const SignedPauli &q,
                                                  const std::vector<std::size_t> &measured, const BitVec &y) {
    StabilizerProjector proj(gens, q.n_qubits(), measured);
    return proj.expectation(q, y);
}

}  // namespace pfsim
