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

#include <map>

#include "reference.hpp"

using namespace pfsim;

namespace {

GateList gates(std::size_t n, std::vector<Gate> g) {
    return GateList{n, std::move(g)};
}

// U p U^dagger with U the dense circuit unitary.
ref::Mat dense_conjugate(const ref::Mat &u, const SignedPauli &p) {
    return ref::mul(u, ref::mul(ref::pauli_matrix(p), ref::adjoint(u)));
}

}  // namespace

TEST(Conjugate, HadamardSwapsZToX) {
    CliffordTableau h = from_gates(gates(1, {{GateType::H, 0}}));
    EXPECT_EQ(conjugate(h, SignedPauli::parse("Z")), SignedPauli::parse("X"));
    EXPECT_EQ(conjugate(h, SignedPauli::parse("Y")), SignedPauli::parse("-Y"));
}

TEST(Conjugate, PhaseGateMapsXToY) {
    CliffordTableau s = from_gates(gates(1, {{GateType::S, 0}}));
    SignedPauli y = conjugate(s, SignedPauli::parse("X"));
    EXPECT_EQ(y, SignedPauli::y_on(1, 0));
    EXPECT_EQ(y.phase(), 1);
}

TEST(Conjugate, DimensionMismatchThrows) {
    EXPECT_THROW(conjugate(CliffordTableau::identity(2), SignedPauli::parse("X")), DimensionError);
}

TEST(FromGates, EmptyIsIdentity) {
    EXPECT_EQ(from_gates(gates(3, {})), CliffordTableau::identity(3));
}

TEST(FromGates, BellCircuitMapsZ0ToXX) {
    CliffordTableau u = from_gates(gates(2, {{GateType::H, 0}, {GateType::CNOT, 0, 1}}));
    EXPECT_EQ(conjugate(u, SignedPauli::parse("ZI")), SignedPauli::parse("XX"));
    ref::Mat d = dense_conjugate(ref::circuit_unitary(gates(2, {{GateType::H, 0}, {GateType::CNOT, 0, 1}})),
                                 SignedPauli::parse("ZI"));
    EXPECT_LT(ref::max_diff(d, ref::pauli_matrix(SignedPauli::parse("XX"))), 1e-12);
}

TEST(FromGates, TwoPhaseGatesEqualZ) {
    EXPECT_EQ(from_gates(gates(1, {{GateType::S, 0}, {GateType::S, 0}})), from_gates(gates(1, {{GateType::Z, 0}})));
}

TEST(FromGates, BadIndicesRejected) {
    EXPECT_THROW(from_gates(gates(2, {{GateType::H, 2}})), ValidationError);
    EXPECT_THROW(from_gates(gates(2, {{GateType::CNOT, 1, 1}})), ValidationError);
    EXPECT_THROW(from_gates(gates(2, {{GateType::CZ, 0, 5}})), ValidationError);
}

TEST(FromGates, EveryGateMatchesDense) {
    Rng rng(31);
    for (int trial = 0; trial < 40; trial++) {
        GateList g = ref::random_gates(4, 12, rng);
        CliffordTableau u = from_gates(g);
        ref::Mat um = ref::circuit_unitary(g);
        for (int k = 0; k < 5; k++) {
            SignedPauli p = ref::random_pauli(4, rng);
            ASSERT_LT(ref::max_diff(dense_conjugate(um, p), ref::pauli_matrix(conjugate(u, p))), 1e-12)
                << print_circuit(g) << p.str();
        }
    }
}

TEST(Conjugate, RandomFiveQubitTableauMatchesDense) {
    Rng rng(32);
    for (int trial = 0; trial < 10; trial++) {
        CliffordTableau u = random_clifford(5, rng);
        ref::Mat um = ref::circuit_unitary(synthesize(u));
        SignedPauli p = ref::random_pauli(5, rng);
        EXPECT_LT(ref::max_diff(dense_conjugate(um, p), ref::pauli_matrix(conjugate(u, p))), 1e-12);
    }
}

TEST(Conjugate, PreservesCommutationAndHermiticity) {
    Rng rng(33);
    for (int trial = 0; trial < 100; trial++) {
        CliffordTableau u = random_clifford(6, rng);
        SignedPauli p = ref::random_pauli(6, rng), q = ref::random_pauli(6, rng);
        SignedPauli up = conjugate(u, p), uq = conjugate(u, q);
        EXPECT_EQ(commutes(p, q), commutes(up, uq));
        EXPECT_EQ(p.is_hermitian(), up.is_hermitian());
        EXPECT_EQ(conjugate(u, pauli_mul(p, q)), pauli_mul(up, uq));
    }
}

TEST(Compose, MatchesConcatenatedCircuits) {
    Rng rng(34);
    for (int trial = 0; trial < 30; trial++) {
        GateList a = ref::random_gates(4, 8, rng), b = ref::random_gates(4, 8, rng);
        GateList ab = a;
        ab.gates.insert(ab.gates.end(), b.gates.begin(), b.gates.end());
        EXPECT_EQ(compose(from_gates(a), from_gates(b)), from_gates(ab));
    }
}

TEST(Synthesize, IdentityRoundTrip) {
    CliffordTableau id = CliffordTableau::identity(4);
    EXPECT_EQ(from_gates(synthesize(id)), id);
}

TEST(Synthesize, BellTableauRoundTrip) {
    CliffordTableau u = from_gates(gates(2, {{GateType::H, 0}, {GateType::CNOT, 0, 1}}));
    EXPECT_EQ(from_gates(synthesize(u)), u);
}

TEST(Synthesize, RandomSixQubitRoundTrip) {
    Rng rng(35);
    for (int trial = 0; trial < 100; trial++) {
        CliffordTableau u = random_clifford(6, rng);
        GateList g = synthesize(u);
        EXPECT_EQ(from_gates(g), u);
        EXPECT_LE(g.gates.size(), 12u * 36u);
    }
}

TEST(Synthesize, RoundTripFromGates) {
    Rng rng(36);
    for (int trial = 0; trial < 50; trial++) {
        GateList g = ref::random_gates(5, 30, rng);
        CliffordTableau u = from_gates(g);
        EXPECT_EQ(from_gates(synthesize(u)), u);
    }
}

TEST(Synthesize, InvalidTableauRejected) {
    // X and Z images commute: not symplectic.
    EXPECT_THROW(CliffordTableau::from_images({SignedPauli::parse("X")}, {SignedPauli::parse("X")}), ValidationError);
    // Non-Hermitian image.
    EXPECT_THROW(CliffordTableau::from_images({SignedPauli::parse("iX")}, {SignedPauli::parse("Z")}), ValidationError);
}

TEST(RandomClifford, DeterministicForSeed) {
    Rng a(77), b(77);
    for (std::size_t n = 1; n <= 6; n++) {
        EXPECT_EQ(random_clifford(n, a), random_clifford(n, b));
    }
    EXPECT_THROW(random_clifford(0, a), DomainError);
}

TEST(RandomClifford, SingleQubitClassesRoughlyUniform) {
    Rng rng(37);
    std::map<std::string, int> counts;
    const int samples = 4800;
    for (int k = 0; k < samples; k++) {
        CliffordTableau u = random_clifford(1, rng);
        counts[u.x_image(0).str() + u.z_image(0).str()]++;
    }
    ASSERT_EQ(counts.size(), 24u);
    double p = 1.0 / 24.0, mean = samples * p, sd = std::sqrt(samples * p * (1 - p));
    for (const auto &[key, c] : counts) {
        EXPECT_LT(std::abs(c - mean), 5 * sd) << key;
    }
}

TEST(RandomClifford, ImagesAreValid) {
    Rng rng(38);
    for (std::size_t n = 1; n <= 12; n++) {
        EXPECT_NO_THROW(random_clifford(n, rng).validate());
    }
}

TEST(CircuitIo, ParsePrintRoundTrip) {
    Rng rng(39);
    for (int trial = 0; trial < 20; trial++) {
        GateList g = ref::random_gates(5, 25, rng);
        std::string text = print_circuit(g);
        GateList back = parse_circuit(text);
        EXPECT_EQ(back.n_qubits, g.n_qubits);
        EXPECT_EQ(back.gates, g.gates);
        EXPECT_EQ(print_circuit(back), text);
    }
}

TEST(CircuitIo, CommentsAndBlankLines) {
    GateList g = parse_circuit("# header\nqubits 3\n\nH 0   # first\nCNOT 0 1\nCZ 2 1\n");
    EXPECT_EQ(g.n_qubits, 3u);
    ASSERT_EQ(g.gates.size(), 3u);
    EXPECT_EQ(g.gates[2], (Gate{GateType::CZ, 2, 1}));
}

TEST(CircuitIo, Errors) {
    EXPECT_THROW(parse_circuit("H 0\n"), ParseError);
    EXPECT_THROW(parse_circuit("qubits 2\nFOO 0\n"), ParseError);
    EXPECT_THROW(parse_circuit("qubits 2\nCNOT 0\n"), ParseError);
    EXPECT_THROW(parse_circuit("qubits 2\nH x\n"), ParseError);
    EXPECT_THROW(parse_circuit("qubits 2\nH 3\n"), ValidationError);
    EXPECT_THROW(parse_circuit(""), ParseError);
}
