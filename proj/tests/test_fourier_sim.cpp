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

#include <gtest/gtest.h>

#include <set>

#include "reference.hpp"

using namespace pfsim;

namespace {

using C = std::complex<double>;

QubitInput any_input(Rng &rng) {
    switch (uniform_below(rng, 6)) {
        case 0:
            return QubitInput::t_state();
        case 1:
            return QubitInput::h_state().depolarized(uniform01(rng));
        case 2:
            return QubitInput::plus();
        case 3:
            return haar_random_input(rng);
        default:
            return random_mixed_input(rng);
    }
}

SimInstance random_instance(Rng &rng, std::size_t max_total, std::size_t min_m = 1) {
    std::size_t total = std::max<std::size_t>(min_m, 1 + uniform_below(rng, max_total));
    std::size_t m = min_m + uniform_below(rng, total - min_m + 1);
    std::vector<QubitInput> in;
    for (std::size_t i = 0; i < m; i++) {
        in.push_back(any_input(rng));
    }
    std::vector<std::size_t> k;
    for (std::size_t q = 0; q < total; q++) {
        if (coin(rng) || q == 0) {
            k.push_back(q);
        }
    }
    // Shuffled order exercises the outcome-bit mapping.
    for (std::size_t i = k.size(); i > 1; i--) {
        std::swap(k[i - 1], k[uniform_below(rng, i)]);
    }
    return SimInstance(total - m, std::move(in), random_clifford(total, rng), std::move(k));
}

// U (|0><0|^n (x) X^s Z^t) U^dagger traced against |y><y|_K, times prod rho_st / 2, by matrices.
C dense_coefficient(const SimInstance &inst, const BitVec &y, const BitVec &s, const BitVec &t) {
    std::size_t nt = inst.n_total();
    std::vector<ref::Mat> f;
    C weight = 1.0;
    for (std::size_t q = 0; q < inst.n; q++) {
        f.push_back(ref::mat2(1, 0, 0, 0));
    }
    for (std::size_t i = 0; i < inst.m(); i++) {
        ref::Mat p = ref::eye(2);
        if (s[i]) {
            p = ref::mul(p, ref::pauli_x());
        }
        if (t[i]) {
            p = ref::mul(p, ref::pauli_z());
        }
        f.push_back(p);
        const QubitInput &q = inst.inputs[i];
        C rho_st = s[i] ? (t[i] ? C(0, q.ry()) : C(q.rx())) : (t[i] ? C(q.rz()) : C(1.0));
        weight *= 0.5 * rho_st;
    }
    ref::Mat u = ref::circuit_unitary(synthesize(inst.circuit));
    ref::Mat op = ref::mul(u, ref::mul(ref::tensor(f), ref::adjoint(u)));
    return ref::trace(ref::mul(op, ref::outcome_projector(inst.measured, y, nt))) * weight;
}

SimInstance single(const QubitInput &in, const GateList &g) {
    return SimInstance(0, {in}, from_gates(g), {0});
}

}  // namespace

TEST(Truncation, LevelExamples) {
    EXPECT_EQ(truncation_level(std::sqrt(4.0), 4.0, 0.5), 0u);
    EXPECT_EQ(truncation_level(0.1, 4.0, 0.2), 15u);
    EXPECT_EQ(truncation_level(0.05, 8.0, 0.292893), 14u);
    EXPECT_EQ(truncation_level(0.05, 8.0, 0.292893, 6), 6u);
    EXPECT_THROW(truncation_level(0.1, 8.0, 0.0), DomainError);
    EXPECT_THROW(truncation_level(0.1, 2.0, 0.3), DomainError);
    EXPECT_THROW(truncation_level(-1.0, 8.0, 0.3), DomainError);
}

TEST(Truncation, LevelIsSmallestSatisfying) {
    Rng rng(91);
    for (int trial = 0; trial < 200; trial++) {
        double alpha = 2.5 + 10 * uniform01(rng), delta = 0.01 + uniform01(rng), rate = 0.05 + 0.9 * uniform01(rng);
        std::size_t l = truncation_level(delta, alpha, rate);
        EXPECT_LE(truncation_bound(alpha, rate, l), delta * (1 + 1e-12));
        if (l > 0) {
            EXPECT_GT(truncation_bound(alpha, rate, l - 1), delta);
        }
    }
}

TEST(Budget, Examples) {
    EXPECT_EQ(coefficient_budget(7, 0), 1u);
    EXPECT_EQ(coefficient_budget(5, 1), 16u);
    EXPECT_EQ(coefficient_budget(20, 3), 32551u);
    EXPECT_EQ(coefficient_budget(6, 6), 4096u);
    EXPECT_THROW(coefficient_budget(3, 4), DomainError);
    EXPECT_THROW(coefficient_budget(200, 100), CapacityError);
}

TEST(Enumeration, CountMatchesBudget) {
    for (std::size_t m = 0; m <= 7; m++) {
        for (std::size_t l = 0; l <= m; l++) {
            auto terms = enumerate_terms(m, l);
            EXPECT_EQ(terms.size(), coefficient_budget(m, l));
            std::set<std::pair<BitVec, BitVec>> seen;
            std::size_t prev = 0;
            for (const auto &t : terms) {
                EXPECT_TRUE(seen.insert({t.s, t.t}).second);
                EXPECT_EQ(t.weight, fourier_weight(t.s, t.t));
                EXPECT_LE(t.weight, l);
                EXPECT_GE(t.weight, prev);
                prev = t.weight;
            }
        }
    }
}

TEST(Enumeration, Order) {
    auto terms = enumerate_terms(3, 2);
    auto label = [](const FourierTerm &t) {
        std::string s;
        for (std::size_t i = 0; i < 3; i++) {
            s += t.s[i] ? (t.t[i] ? 'Y' : 'X') : (t.t[i] ? 'Z' : 'I');
        }
        return s;
    };
    std::vector<std::string> want = {"III", "ZII", "XII", "YII", "IZI", "IXI", "IYI", "IIZ", "IIX", "IIY",
                                     "ZZI", "ZXI", "ZYI", "XZI", "XXI", "XYI", "YZI", "YXI", "YYI", "ZIZ"};
    for (std::size_t k = 0; k < want.size(); k++) {
        EXPECT_EQ(label(terms[k]), want[k]) << k;
    }
    EXPECT_EQ(label(terms.back()), "IYY");
}

TEST(FourierCoefficient, SingleInputExamples) {
    SimInstance inst = single(QubitInput::t_state(), GateList{1, {}});
    EXPECT_DOUBLE_EQ(fourier_coefficient(inst, BitVec{0}, BitVec{0}, BitVec{0}), 0.5);
    EXPECT_EQ(fourier_coefficient(inst, BitVec{0}, BitVec{1}, BitVec{0}), 0.0);
}

TEST(FourierCoefficient, MatchesDenseSandwich) {
    Rng rng(92);
    for (int trial = 0; trial < 200; trial++) {
        SimInstance inst = random_instance(rng, 5);
        FourierEvaluator ev(inst);
        BitVec y = random_bits(rng, inst.measured.size());
        BitVec s = random_bits(rng, inst.m()), t = random_bits(rng, inst.m());
        C want = dense_coefficient(inst, y, s, t);
        EXPECT_NEAR(want.imag(), 0.0, 1e-12);
        ASSERT_NEAR(ev.coefficient(y, s, t), want.real(), 1e-12) << "trial " << trial;
    }
}

TEST(FourierCoefficient, PatternLengthChecked) {
    SimInstance inst = single(QubitInput::t_state(), GateList{1, {}});
    EXPECT_THROW(fourier_coefficient(inst, BitVec{0}, BitVec{0, 0}, BitVec{0, 0}), DimensionError);
    EXPECT_THROW(fourier_coefficient(inst, BitVec{0, 0}, BitVec{0}, BitVec{0}), DimensionError);
}

TEST(ApproxProbability, HadamardOnTExample) {
    SimInstance inst = single(QubitInput::t_state(), GateList{1, {{GateType::H, 0}}});
    EXPECT_NEAR(approx_probability(inst, BitVec{0}, 1), 0.5 + M_SQRT1_2 / 2, 1e-15);
    EXPECT_NEAR(approx_probability(inst, BitVec{0}, 1), 0.853553390593274, 1e-12);
    EXPECT_NEAR(exact_distribution(inst)[BitVec{0}], 0.853553390593274, 1e-12);
}

TEST(ApproxProbability, ExactAtFullLevel) {
    Rng rng(93);
    for (int trial = 0; trial < 200; trial++) {
        SimInstance inst = random_instance(rng, 8);
        auto dense = exact_distribution(inst);
        FourierEvaluator ev(inst);
        // A few outcomes per instance keep the suite fast.
        int checked = 0;
        for (const auto &[y, p] : dense) {
            if (checked++ >= 4) {
                break;
            }
            ASSERT_NEAR(sum_terms(fourier_terms(ev, y, inst.m()), inst.m()), p, 1e-10) << "trial " << trial;
        }
    }
}

TEST(ApproxProbability, MaximallyMixedInputsIgnoreLevel) {
    Rng rng(94);
    for (int trial = 0; trial < 20; trial++) {
        std::size_t m = 1 + uniform_below(rng, 4), n = uniform_below(rng, 3);
        SimInstance inst(n, std::vector<QubitInput>(m, QubitInput::maximally_mixed()), random_clifford(n + m, rng),
                         {0});
        double q0 = approx_probability(inst, BitVec{1}, 0);
        for (std::size_t l = 1; l <= m; l++) {
            EXPECT_EQ(approx_probability(inst, BitVec{1}, l), q0);
        }
    }
}

TEST(ApproxProbability, NoInputsIsStabilizerProbability) {
    Rng rng(95);
    for (int trial = 0; trial < 20; trial++) {
        std::size_t n = 1 + uniform_below(rng, 5);
        std::vector<std::size_t> k = {0};
        if (n > 1) {
            k.push_back(n - 1);
        }
        SimInstance inst(n, {}, random_clifford(n, rng), k);
        auto dense = exact_distribution(inst);
        for (const auto &[y, p] : dense) {
            EXPECT_NEAR(approx_probability(inst, y, 0), p, 1e-12);
        }
        EXPECT_EQ(enumerate_terms(0, 0).size(), 1u);
    }
}

TEST(ApproxProbability, DroppedCoefficientsBoundTheGap) {
    Rng rng(96);
    for (int trial = 0; trial < 50; trial++) {
        SimInstance inst = random_instance(rng, 6);
        FourierEvaluator ev(inst);
        BitVec y = random_bits(rng, inst.measured.size());
        auto terms = fourier_terms(ev, y, inst.m());
        auto sums = level_sums(terms, inst.m());
        for (std::size_t l = 0; l <= inst.m(); l++) {
            double dropped = 0.0;
            for (const auto &t : terms) {
                if (t.weight > l) {
                    dropped += std::abs(t.value);
                }
            }
            EXPECT_LE(std::abs(sums[inst.m()] - sums[l]), dropped + 1e-14);
            EXPECT_NEAR(sums[l], sum_terms(terms, l), 1e-15);
        }
    }
}

TEST(ApproxProbability, RawValuesAreNotClamped) {
    Rng rng(97);
    bool saw_outside = false;
    for (int trial = 0; trial < 300 && !saw_outside; trial++) {
        SimInstance inst = random_instance(rng, 6);
        for (const BitVec &y : all_outcomes(inst.measured.size())) {
            double v = approx_probability(inst, y, inst.m() > 1 ? 1 : 0);
            saw_outside = saw_outside || v < 0.0 || v > 1.0;
        }
    }
    EXPECT_TRUE(saw_outside);
}

TEST(ApproxProbability, OrderAndThreadIndependent) {
    Rng rng(98);
    for (int trial = 0; trial < 20; trial++) {
        SimInstance inst = random_instance(rng, 7);
        BitVec y = random_bits(rng, inst.measured.size());
        FourierEvaluator ev(inst);
        auto terms = fourier_terms(ev, y, inst.m());
        auto reversed = terms;
        std::reverse(reversed.begin(), reversed.end());
        EXPECT_NEAR(sum_terms(terms, inst.m()), sum_terms(reversed, inst.m()), 1e-12);
        EXPECT_EQ(approx_probability(inst, y, inst.m(), 1), approx_probability(inst, y, inst.m(), 3));
    }
}

TEST(Decay, MixedCoefficientsShrinkByMixedness) {
    Rng rng(99);
    for (int trial = 0; trial < 60; trial++) {
        SimInstance pure = random_instance(rng, 6);
        SimInstance mixed = pure;
        double lambda = 1.0;
        for (auto &q : pure.inputs) {
            q = haar_random_input(rng);
        }
        for (std::size_t i = 0; i < pure.m(); i++) {
            double li = uniform01(rng);
            mixed.inputs[i] = pure.inputs[i].depolarized(li);
            lambda = std::min(lambda, mixedness(mixed.inputs[i]));
        }
        FourierEvaluator ep(pure), em(mixed);
        BitVec y = random_bits(rng, pure.measured.size());
        auto qp = fourier_terms(ep, y, pure.m()), qm = fourier_terms(em, y, pure.m());
        for (std::size_t k = 0; k < qp.size(); k++) {
            ASSERT_LE(std::abs(qm[k].value), std::pow(1 - lambda, qm[k].weight) * std::abs(qp[k].value) + 1e-12);
        }
    }
}

TEST(Decay, PureCoefficientsBoundedByReferenceOperator) {
    Rng rng(100);
    for (int trial = 0; trial < 60; trial++) {
        SimInstance inst = random_instance(rng, 6);
        double mu = 1.0;
        for (auto &q : inst.inputs) {
            q = coin(rng) ? haar_random_input(rng) : QubitInput::t_state();
            mu = std::min(mu, magic_mu(q));
        }
        FourierEvaluator ev(inst);
        BitVec y = random_bits(rng, inst.measured.size());
        for (const auto &t : enumerate_terms(inst.m(), inst.m())) {
            C trace = ev.projector().expectation(ev.sandwiched(t.s, t.t), y);
            double o_hat = std::abs(trace);
            for (std::size_t i = 0; i < inst.m(); i++) {
                o_hat *= 0.5 * std::abs(reference_operator(inst.inputs[i]).coefficient(t.s[i], t.t[i]));
            }
            double q_hat = std::abs(ev.coefficient(y, t.s, t.t));
            ASSERT_LE(q_hat, std::pow(1 - mu, t.weight) * o_hat + 1e-12);
        }
    }
}

TEST(Twirl, ExhaustiveForSmallM) {
    Rng rng(101);
    for (int trial = 0; trial < 12; trial++) {
        SimInstance inst = random_instance(rng, 5);
        if (inst.m() > 3) {
            continue;
        }
        std::size_t m = inst.m();
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << m); a++) {
            for (std::uint64_t b = 0; b < (std::uint64_t{1} << m); b++) {
                auto r = twirl_identity_check(inst, BitVec::from_uint(a, m), BitVec::from_uint(b, m));
                EXPECT_TRUE(r.pass) << r.max_deviation;
            }
        }
    }
}

TEST(Twirl, InsertedPaulisFlipCoefficientSigns) {
    Rng rng(102);
    for (int trial = 0; trial < 30; trial++) {
        SimInstance inst = random_instance(rng, 6);
        std::size_t m = inst.m();
        BitVec a = random_bits(rng, m), b = random_bits(rng, m);
        GateList paulis{inst.n_total(), {}};
        for (std::size_t i = 0; i < m; i++) {
            auto q = static_cast<std::uint32_t>(inst.n + i);
            if (a[i]) {
                paulis.gates.push_back({GateType::Z, q, 0});
            }
            if (b[i]) {
                paulis.gates.push_back({GateType::X, q, 0});
            }
        }
        SimInstance moved = inst;
        moved.circuit = compose(from_gates(paulis), inst.circuit);
        FourierEvaluator e0(inst), e1(moved);
        BitVec y = random_bits(rng, inst.measured.size());
        for (const auto &t : enumerate_terms(m, m)) {
            double sign = (dot(t.s, a) != dot(t.t, b)) ? -1.0 : 1.0;
            ASSERT_NEAR(e1.coefficient(y, t.s, t.t), sign * e0.coefficient(y, t.s, t.t), 1e-15);
        }
    }
}

TEST(MeasuredCap, Examples) {
    EXPECT_EQ(measured_cap(std::vector<QubitInput>(100, QubitInput::t_state()), 0), 41);
    EXPECT_EQ(measured_cap(std::vector<QubitInput>(6, QubitInput::t_state()), 0), 2);
    EXPECT_EQ(measured_cap(std::vector<QubitInput>(5, QubitInput::plus()), 3), 8);
    EXPECT_EQ(measured_cap(std::vector<QubitInput>(4, QubitInput::from_angles(0.7, 1.9)), 3), 3);
    EXPECT_THROW(measured_cap({QubitInput::t_state().depolarized(0.1)}, 0), DomainError);
}

TEST(TruncationRate, Pathways) {
    auto r = truncation_rate({QubitInput::t_state().depolarized(0.3), QubitInput::maximally_mixed()});
    EXPECT_EQ(r.pathway, RatePathway::mixed);
    EXPECT_NEAR(r.rate, 0.3, 1e-15);
    r = truncation_rate({QubitInput::t_state(), QubitInput::h_state()});
    EXPECT_EQ(r.pathway, RatePathway::pure);
    EXPECT_NEAR(r.rate, 1 - M_SQRT1_2, 1e-15);
    r = truncation_rate({QubitInput::t_state(), QubitInput::t_state().depolarized(0.1)});
    EXPECT_EQ(r.pathway, RatePathway::hybrid);
    EXPECT_NEAR(r.rate, 0.1, 1e-15);
}

TEST(Pbc, SingleQubitExample) {
    EXPECT_NEAR(pbc_probability({SignedPauli::parse("Z")}, BitVec{0}, QubitInput::t_state(), 1), 0.5, 1e-15);
    EXPECT_NEAR(pbc_probability({SignedPauli::parse("X")}, BitVec{0}, QubitInput::t_state(), 1),
                0.5 * (1 + M_SQRT1_2), 1e-15);
    EXPECT_NEAR(pbc_probability({SignedPauli::parse("X")}, BitVec{1}, QubitInput::t_state(), 1),
                0.5 * (1 - M_SQRT1_2), 1e-15);
}

TEST(Pbc, MatchesDenseProjector) {
    Rng rng(103);
    for (int trial = 0; trial < 60; trial++) {
        std::size_t n = 1 + uniform_below(rng, 6), k = 1 + uniform_below(rng, n);
        CliffordTableau u = random_clifford(n, rng);
        std::vector<SignedPauli> gens;
        for (std::size_t i = 0; i < k; i++) {
            gens.push_back(conjugate(u, SignedPauli::z_on(n, i)));
        }
        if (k >= 2 && coin(rng)) {
            gens.push_back(pauli_mul(gens[0], gens[1]));
        }
        BitVec sigma = random_bits(rng, gens.size());
        QubitInput in = coin(rng) ? QubitInput::t_state() : QubitInput::zero();
        std::size_t d = std::size_t{1} << n;
        ref::Mat pi = ref::eye(d);
        for (std::size_t i = 0; i < gens.size(); i++) {
            ref::Mat g = ref::scale(ref::pauli_matrix(gens[i]), sigma[i] ? -1.0 : 1.0);
            pi = ref::mul(pi, ref::scale(ref::add(ref::eye(d), g), 0.5));
        }
        ref::Mat rho = ref::tensor(std::vector<ref::Mat>(n, ref::bloch_density(in.rx(), in.ry(), in.rz())));
        double want = ref::trace(ref::mul(pi, rho)).real();
        ASSERT_NEAR(pbc_probability(n, gens, sigma, in, n), want, 1e-10) << "trial " << trial;
        EXPECT_NEAR(dense_pbc_probability(n, gens, sigma, in), want, 1e-10);
    }
}

TEST(Pbc, Errors) {
    EXPECT_THROW(pbc_probability({SignedPauli::parse("Z"), SignedPauli::parse("X")}, BitVec{0, 0},
                                 QubitInput::t_state(), 1),
                 ContractViolation);
    EXPECT_THROW(pbc_probability({SignedPauli::parse("Z")}, BitVec{0, 0}, QubitInput::t_state(), 1), DimensionError);
    EXPECT_THROW(pbc_probability({}, BitVec{}, QubitInput::t_state(), 0), ValidationError);
    EXPECT_THROW(pbc_probability({SignedPauli::parse("Z")}, BitVec{0}, QubitInput::t_state(), 2), DomainError);
}

TEST(InstanceIo, RoundTrip) {
    Rng rng(104);
    for (int trial = 0; trial < 10; trial++) {
        SimInstance inst = random_instance(rng, 6);
        SimInstance back = parse_instance(print_instance(inst));
        EXPECT_EQ(back.n, inst.n);
        EXPECT_EQ(back.inputs, inst.inputs);
        EXPECT_EQ(back.measured, inst.measured);
        EXPECT_EQ(from_gates(synthesize(back.circuit)), inst.circuit);
    }
}
