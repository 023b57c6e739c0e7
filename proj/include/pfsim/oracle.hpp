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
#include <map>
#include <vector>

#include "pfsim/dense.hpp"
#include "pfsim/fourier_sim.hpp"
#include "pfsim/tableau.hpp"

namespace pfsim {

/// Every outcome on k measured qubits, bit j of the counter giving y_j.
inline std::vector<BitVec> all_outcomes(std::size_t k) {
    if (k > 20) {
        throw CapacityError("cannot enumerate outcomes on more than 20 measured qubits");
    }
    std::vector<BitVec> out;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); v++) {
        out.push_back(BitVec::from_uint(v, k));
    }
    return out;
}

/// Dense state U (|0><0|^n (x) rho_1 (x) ... (x) rho_m) U^dagger, with the
/// optional Pauli `insert` applied to the input before U.
inline DenseState dense_instance_state(const SimInstance &inst, const SignedPauli *insert = nullptr) {
    std::vector<QubitInput> all(inst.n, QubitInput::zero());
    all.insert(all.end(), inst.inputs.begin(), inst.inputs.end());
    DenseState st = DenseState::product(all);
    if (insert) {
        st.apply_pauli(*insert);
    }
    return apply_circuit(std::move(st), synthesize(inst.circuit));
}

/// Exact q(y) for every outcome y on the measured set.
inline std::map<BitVec, double> exact_distribution(const SimInstance &inst, const SignedPauli *insert = nullptr) {
    DenseState st = dense_instance_state(inst, insert);
    std::map<BitVec, double> out;
    for (const BitVec &y : all_outcomes(inst.measured.size())) {
        out[y] = exact_probability(st, inst.measured, y);
    }
    return out;
}

struct TwirlCheckResult {
    bool pass = false;
    double max_deviation = 0.0;
};

/// Compares sum_{s,t} q^_{s,t}(y) (-1)^{s.a + t.b} with the dense probability
/// of the circuit that first applies Z^a X^b to the input qubits, for every y.
inline TwirlCheckResult twirl_identity_check(const SimInstance &inst, const BitVec &a, const BitVec &b,
                                             double tol = 1e-10) {
    if (a.size() != inst.m() || b.size() != inst.m()) {
        throw DimensionError("twirl pattern length differs from m");
    }
    if (inst.n_total() > 8) {
        throw CapacityError("twirl identity check limited to 8 qubits");
    }
    std::size_t nt = inst.n_total();
    SignedPauli insert = SignedPauli::identity(nt);
    for (std::size_t i = 0; i < inst.m(); i++) {
        insert.set_x(inst.n + i, b[i]);
        insert.set_z(inst.n + i, a[i]);
    }
    std::map<BitVec, double> dense = exact_distribution(inst, &insert);
    FourierEvaluator ev(inst);
    TwirlCheckResult r{true, 0.0};
    for (const auto &[y, p] : dense) {
        CompensatedSum acc;
        for (const FourierTerm &t : fourier_terms(ev, y, inst.m())) {
            bool odd = dot(t.s, a) != dot(t.t, b);
            acc.add(odd ? -t.value : t.value);
        }
        r.max_deviation = std::max(r.max_deviation, std::abs(acc.value() - p));
    }
    r.pass = r.max_deviation <= tol;
    return r;
}

/// Tr[prod_i (I + g_i)/2 * q * (|y><y|_K (x) I)] by dense linear algebra.
inline std::complex<double> dense_projector_expectation(const std::vector<SignedPauli> &gens, const SignedPauli &q,
                                                        const std::vector<std::size_t> &measured, const BitVec &y) {
    std::size_t n = q.n_qubits();
    if (y.size() != measured.size()) {
        throw DimensionError("outcome length does not match the measured set");
    }
    std::complex<double> total = 0.0;
    for (std::size_t j = 0; j < (std::size_t{1} << n); j++) {
        bool consistent = true;
        for (std::size_t k = 0; k < measured.size(); k++) {
            consistent = consistent && (((j >> measured[k]) & 1) != 0) == y[k];
        }
        if (!consistent) {
            continue;
        }
        std::vector<cplx> basis(std::size_t{1} << n, 0.0);
        basis[j] = 1.0;
        DenseState v = DenseState::from_amplitudes(std::move(basis));
        v.apply_pauli(q);
        for (const auto &g : gens) {
            DenseState w = v;
            w.apply_pauli(g);
            for (std::size_t k = 0; k < v.dim(); k++) {
                v.mutable_data()[k] = 0.5 * (v.data()[k] + w.data()[k]);
            }
        }
        total += v.data()[j];
    }
    return total;
}

/// Tr[Pi rho^{(x)n}] with Pi = prod_i (I + (-1)^{sigma_i} P_i)/2, by dense linear algebra.
inline double dense_pbc_probability(std::size_t n, const std::vector<SignedPauli> &gens, const BitVec &signs,
                                    const QubitInput &input) {
    if (signs.size() != gens.size()) {
        throw DimensionError("one sign per generator is required");
    }
    DenseState rho = DenseState::product(std::vector<QubitInput>(n, input));
    std::size_t d = rho.dim();
    std::complex<double> total = 0.0;
    for (std::size_t j = 0; j < d; j++) {
        // Column j of Pi, then Tr[Pi rho] = sum_{i,j} Pi_ij rho_ji.
        std::vector<cplx> basis(d, 0.0);
        basis[j] = 1.0;
        DenseState v = DenseState::from_amplitudes(std::move(basis));
        for (std::size_t g = 0; g < gens.size(); g++) {
            DenseState w = v;
            w.apply_pauli(gens[g]);
            double sign = signs[g] ? -1.0 : 1.0;
            for (std::size_t k = 0; k < d; k++) {
                v.mutable_data()[k] = 0.5 * (v.data()[k] + sign * w.data()[k]);
            }
        }
        for (std::size_t i = 0; i < d; i++) {
            total += v.data()[i] * rho.rho(j, i);
        }
    }
    return total.real();
}

}  // namespace pfsim
