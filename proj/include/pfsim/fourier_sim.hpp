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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pfsim/bitvec.hpp"
#include "pfsim/errors.hpp"
#include "pfsim/input_model.hpp"
#include "pfsim/parallel.hpp"
#include "pfsim/pauli.hpp"
#include "pfsim/projector.hpp"
#include "pfsim/summation.hpp"
#include "pfsim/tableau.hpp"
#include "pfsim/tolerances.hpp"

namespace pfsim {

/// Clifford circuit on n + m qubits. Qubits 0..n-1 start in |0>, qubit n + i
/// starts in inputs[i]; the qubits in `measured` are read out in that order.
struct SimInstance {
    std::size_t n = 0;
    std::vector<QubitInput> inputs;
    CliffordTableau circuit;
    std::vector<std::size_t> measured;

    SimInstance() = default;
    SimInstance(std::size_t n_zero, std::vector<QubitInput> in, CliffordTableau u, std::vector<std::size_t> k)
        : n(n_zero), inputs(std::move(in)), circuit(std::move(u)), measured(std::move(k)) {
        validate();
    }

    std::size_t m() const {
        return inputs.size();
    }
    std::size_t n_total() const {
        return n + inputs.size();
    }

    void validate() const {
        if (circuit.n_qubits() != n_total()) {
            throw DimensionError("circuit acts on " + std::to_string(circuit.n_qubits()) + " qubits, instance has " +
                                 std::to_string(n_total()));
        }
        if (measured.size() > n_total()) {
            throw DimensionError("more measured qubits than qubits");
        }
        std::vector<bool> seen(n_total(), false);
        for (std::size_t q : measured) {
            if (q >= n_total()) {
                throw DimensionError("measured qubit " + std::to_string(q) + " out of range");
            }
            if (seen[q]) {
                throw ValidationError("measured qubit " + std::to_string(q) + " listed twice");
            }
            seen[q] = true;
        }
    }
};

/// A Pauli pattern X^s Z^t on the m input qubits, optionally with its coefficient.
struct FourierTerm {
    BitVec s;
    BitVec t;
    std::size_t weight = 0;
    double value = 0.0;
};

/// Number of input qubits where (s_i, t_i) != (0, 0).
inline std::size_t fourier_weight(const BitVec &s, const BitVec &t) {
    return (s | t).popcount();
}

enum class RatePathway { none, mixed, pure, hybrid };

inline const char *pathway_name(RatePathway p) {
    switch (p) {
        case RatePathway::none:
            return "none";
        case RatePathway::mixed:
            return "mixed";
        case RatePathway::pure:
            return "pure";
        case RatePathway::hybrid:
            return "hybrid";
    }
    return "?";
}

struct TruncationRate {
    RatePathway pathway = RatePathway::none;
    double rate = 0.0;
};

/// Decay rate for the l1 bound: min mixedness over mixed inputs, min magic
/// mu over pure inputs, and the smaller of the two when both kinds occur.
inline TruncationRate truncation_rate(const std::vector<QubitInput> &inputs) {
    std::optional<double> lam, mu;
    for (const auto &q : inputs) {
        if (q.is_pure()) {
            double v = magic_mu(q);
            mu = mu ? std::min(*mu, v) : v;
        } else {
            double v = mixedness(q);
            lam = lam ? std::min(*lam, v) : v;
        }
    }
    if (lam && mu) {
        return {RatePathway::hybrid, std::min(*lam, *mu)};
    }
    if (lam) {
        return {RatePathway::mixed, *lam};
    }
    if (mu) {
        return {RatePathway::pure, *mu};
    }
    return {};
}

/// sqrt(alpha) e^{-rate l}.
inline double truncation_bound(double alpha, double rate, std::size_t level) {
    return std::sqrt(alpha) * std::exp(-rate * static_cast<double>(level));
}

/// Smallest l >= 0 with sqrt(alpha) e^{-rate l} <= delta, optionally clamped to max_level.
inline std::size_t truncation_level(double delta, double alpha, double rate,
                                    std::optional<std::size_t> max_level = std::nullopt) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw DomainError("delta must be positive");
    }
    if (!(alpha > 2.0) || !std::isfinite(alpha)) {
        throw DomainError("alpha must exceed 2");
    }
    if (rate == 0.0) {
        throw DomainError("truncation bound vacuous: decay rate is 0");
    }
    if (!(rate > 0.0 && rate <= 1.0)) {
        throw DomainError("decay rate must lie in (0, 1]");
    }
    double x = std::log(std::sqrt(alpha) / delta) / rate;
    std::size_t level = 0;
    if (x > 0.0) {
        double c = std::ceil(x);
        level = c >= 1e18 ? std::numeric_limits<std::size_t>::max() : static_cast<std::size_t>(c);
    }
    if (max_level) {
        level = std::min(level, *max_level);
    }
    return level;
}

/// Exact count sum_{i <= l} 3^i C(m, i) of Pauli patterns of weight at most l.
inline std::uint64_t coefficient_budget(std::size_t m, std::size_t l) {
    if (l > m) {
        throw DomainError("truncation level " + std::to_string(l) + " exceeds m = " + std::to_string(m));
    }
    __extension__ typedef unsigned __int128 u128;
    const u128 limit = std::numeric_limits<std::uint64_t>::max();
    u128 total = 0;
    u128 binom = 1;  // C(m, i)
    u128 pow3 = 1;   // 3^i
    for (std::size_t i = 0; i <= l; i++) {
        if (i > 0) {
            binom = binom * (m - i + 1) / i;
            pow3 *= 3;
        }
        if (binom > limit || pow3 > limit || binom * pow3 > limit || total + binom * pow3 > limit) {
            throw CapacityError("coefficient budget for m = " + std::to_string(m) + ", l = " + std::to_string(l) +
                                " overflows 64 bits");
        }
        total += binom * pow3;
    }
    return static_cast<std::uint64_t>(total);
}

/// Largest term list materialized in memory at once.
inline constexpr std::uint64_t kMaxMaterializedTerms = std::uint64_t{1} << 24;

/// Visits every pattern of weight <= l on m qubits: by weight, then support
/// set in lexicographic order, then per-qubit patterns (0,1), (1,0), (1,1)
/// with the last support qubit varying fastest.
template <typename Fn>
void for_each_term(std::size_t m, std::size_t l, Fn &&fn) {
    if (l > m) {
        throw DomainError("truncation level exceeds m");
    }
    static constexpr int kPatS[3] = {0, 1, 1};
    static constexpr int kPatT[3] = {1, 0, 1};
    FourierTerm term{BitVec(m), BitVec(m), 0, 0.0};
    fn(static_cast<const FourierTerm &>(term));
    for (std::size_t w = 1; w <= l; w++) {
        std::vector<std::size_t> support(w);
        for (std::size_t k = 0; k < w; k++) {
            support[k] = k;
        }
        while (true) {
            std::vector<int> pat(w, 0);
            while (true) {
                FourierTerm t{BitVec(m), BitVec(m), w, 0.0};
                for (std::size_t k = 0; k < w; k++) {
                    t.s.set(support[k], kPatS[pat[k]] != 0);
                    t.t.set(support[k], kPatT[pat[k]] != 0);
                }
                fn(static_cast<const FourierTerm &>(t));
                std::size_t k = w;
                while (k > 0 && pat[k - 1] == 2) {
                    pat[k - 1] = 0;
                    k--;
                }
                if (k == 0) {
                    break;
                }
                pat[k - 1]++;
            }
            // Next w-subset of {0..m-1} in lexicographic order.
            std::size_t k = w;
            while (k > 0 && support[k - 1] == m - w + k - 1) {
                k--;
            }
            if (k == 0) {
                break;
            }
            support[k - 1]++;
            for (std::size_t j = k; j < w; j++) {
                support[j] = support[j - 1] + 1;
            }
        }
    }
}

/// All patterns of weight <= l, in enumeration order.
inline std::vector<FourierTerm> enumerate_terms(std::size_t m, std::size_t l) {
    std::uint64_t budget = coefficient_budget(m, l);
    if (budget > kMaxMaterializedTerms) {
        throw CapacityError("term list of " + std::to_string(budget) + " patterns is too large to materialize");
    }
    std::vector<FourierTerm> out;
    out.reserve(budget);
    for_each_term(m, l, [&](const FourierTerm &t) { out.push_back(t); });
    return out;
}

/// Evaluates Fourier coefficients of one instance. The stabilizer part
/// (generators U Z_i U^dagger and the measured set) is reduced once.
class FourierEvaluator {
   public:
    explicit FourierEvaluator(const SimInstance &inst)
        : inst_(inst), proj_(stabilized_generators(inst), inst.n_total(), inst.measured) {
        std::size_t nt = inst.n_total();
        for (std::size_t i = 0; i < inst.m(); i++) {
            x_images_.push_back(conjugate(inst.circuit, SignedPauli::x_on(nt, inst.n + i)));
            z_images_.push_back(conjugate(inst.circuit, SignedPauli::z_on(nt, inst.n + i)));
        }
    }

    const SimInstance &instance() const {
        return inst_;
    }
    const StabilizerProjector &projector() const {
        return proj_;
    }

    /// U (I_n (x) X^s Z^t) U^dagger.
    SignedPauli sandwiched(const BitVec &s, const BitVec &t) const {
        check_pattern(s, t);
        SignedPauli q = SignedPauli::identity(inst_.n_total());
        for (std::size_t i = 0; i < inst_.m(); i++) {
            if (s[i]) {
                pauli_mul_into(q, x_images_[i]);
            }
            if (t[i]) {
                pauli_mul_into(q, z_images_[i]);
            }
        }
        return q;
    }

    /// <y| U |0><0|^n (x) X^s Z^t U^dagger |y> times prod_i rho^(i)_{s_i t_i} / 2.
    std::complex<double> coefficient_complex(const BitVec &y, const BitVec &s, const BitVec &t) const {
        cplx weight = 1.0;
        for (std::size_t i = 0; i < inst_.m(); i++) {
            weight *= 0.5 * inst_.inputs[i].coefficient(s[i] ? 1 : 0, t[i] ? 1 : 0);
        }
        if (weight == cplx(0.0)) {
            return 0.0;
        }
        return proj_.expectation(sandwiched(s, t), y) * weight;
    }

    double coefficient(const BitVec &y, const BitVec &s, const BitVec &t) const {
        cplx v = coefficient_complex(y, s, t);
        if (std::abs(v.imag()) > kTol.imaginary_residue) {
            throw InternalConsistencyError("Fourier coefficient has imaginary part " + std::to_string(v.imag()));
        }
        return v.real();
    }

   private:
    static std::vector<SignedPauli> stabilized_generators(const SimInstance &inst) {
        inst.validate();
        std::vector<SignedPauli> gens;
        for (std::size_t i = 0; i < inst.n; i++) {
            gens.push_back(conjugate(inst.circuit, SignedPauli::z_on(inst.n_total(), i)));
        }
        return gens;
    }

    void check_pattern(const BitVec &s, const BitVec &t) const {
        if (s.size() != inst_.m() || t.size() != inst_.m()) {
            throw DimensionError("Fourier pattern length differs from m = " + std::to_string(inst_.m()));
        }
    }

    SimInstance inst_;
    StabilizerProjector proj_;
    std::vector<SignedPauli> x_images_;
    std::vector<SignedPauli> z_images_;
};

inline double fourier_coefficient(const SimInstance &inst, const BitVec &y, const BitVec &s, const BitVec &t) {
    return FourierEvaluator(inst).coefficient(y, s, t);
}

/// Every coefficient of weight <= l at outcome y, in enumeration order.
inline std::vector<FourierTerm> fourier_terms(const FourierEvaluator &ev, const BitVec &y, std::size_t l,
                                              std::size_t jobs = 1) {
    std::vector<FourierTerm> terms = enumerate_terms(ev.instance().m(), l);
    parallel_for(terms.size(), jobs, [&](std::size_t k) { terms[k].value = ev.coefficient(y, terms[k].s, terms[k].t); });
    return terms;
}

/// Compensated sum of term values in the given order.
inline double sum_terms(const std::vector<FourierTerm> &terms, std::size_t max_weight) {
    CompensatedSum acc;
    for (const auto &t : terms) {
        if (t.weight <= max_weight) {
            acc.add(t.value);
        }
    }
    return acc.value();
}

/// q'_l(y) for every l in [0, max weight present].
inline std::vector<double> level_sums(const std::vector<FourierTerm> &terms, std::size_t max_level) {
    std::vector<CompensatedSum> acc(max_level + 1);
    for (const auto &t : terms) {
        for (std::size_t l = t.weight; l <= max_level; l++) {
            acc[l].add(t.value);
        }
    }
    std::vector<double> out;
    for (const auto &a : acc) {
        out.push_back(a.value());
    }
    return out;
}

/// Truncated reconstruction q'(y): the sum of all coefficients of weight <= l.
/// The value is not clamped and may lie outside [0, 1].
inline double approx_probability(const SimInstance &inst, const BitVec &y, std::size_t l, std::size_t jobs = 1) {
    if (l > inst.m()) {
        throw DomainError("truncation level exceeds m");
    }
    FourierEvaluator ev(inst);
    return sum_terms(fourier_terms(ev, y, l, jobs), l);
}

/// floor(n + m - sum_i log2(chi_i / 2)) for pure inputs.
inline std::int64_t measured_cap(const std::vector<QubitInput> &inputs, std::size_t n) {
    std::int64_t c3 = 0, c4 = 0;
    for (const auto &q : inputs) {
        if (!q.is_pure()) {
            throw DomainError("measured_cap requires pure inputs");
        }
        int chi = pauli_rank_single(q);
        c3 += chi == 3;
        c4 += chi == 4;
    }
    double cap = static_cast<double>(n + inputs.size()) - static_cast<double>(c4) -
                 static_cast<double>(c3) * std::log2(1.5);
    return static_cast<std::int64_t>(std::floor(cap));
}

/// Tr[Pi rho^{(x)n}] with Pi = prod_i (I + (-1)^{sigma_i} P_i) / 2, keeping
/// only Pauli-basis terms of rho^{(x)n} with weight <= l.
inline double pbc_probability(std::size_t n, const std::vector<SignedPauli> &gens, const BitVec &signs,
                              const QubitInput &input, std::size_t l) {
    if (signs.size() != gens.size()) {
        throw DimensionError("one sign per generator is required");
    }
    if (l > n) {
        throw DomainError("truncation level exceeds qubit count");
    }
    std::vector<SignedPauli> signed_gens;
    for (std::size_t i = 0; i < gens.size(); i++) {
        if (gens[i].n_qubits() != n) {
            throw DimensionError("generator " + gens[i].str() + " has the wrong qubit count");
        }
        SignedPauli g = gens[i];
        if (signs[i]) {
            g.add_phase(2);
        }
        signed_gens.push_back(std::move(g));
    }
    StabilizerProjector proj(signed_gens, n, {});
    BitVec no_outcome(0);
    CompensatedSum acc;
    for_each_term(n, l, [&](const FourierTerm &term) {
        cplx weight = 1.0;
        for (std::size_t i = 0; i < n; i++) {
            weight *= 0.5 * input.coefficient(term.s[i] ? 1 : 0, term.t[i] ? 1 : 0);
        }
        if (weight == cplx(0.0)) {
            return;
        }
        SignedPauli p(term.s, term.t);
        for (const auto &g : signed_gens) {
            if (!commutes(g, p)) {
                return;
            }
        }
        cplx v = proj.expectation(p, no_outcome) * weight;
        if (std::abs(v.imag()) > kTol.imaginary_residue) {
            throw InternalConsistencyError("PBC term has imaginary part " + std::to_string(v.imag()));
        }
        acc.add(v.real());
    });
    return acc.value();
}

inline double pbc_probability(const std::vector<SignedPauli> &gens, const BitVec &signs, const QubitInput &input,
                              std::size_t l) {
    if (gens.empty()) {
        throw ValidationError("pbc_probability needs at least one generator to fix the qubit count");
    }
    return pbc_probability(gens.front().n_qubits(), gens, signs, input, l);
}

}  // namespace pfsim
