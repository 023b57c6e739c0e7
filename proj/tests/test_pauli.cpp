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

#include "reference.hpp"

using namespace pfsim;

namespace {

// Every Pauli on n qubits with every phase.
std::vector<SignedPauli> all_paulis(std::size_t n) {
    std::vector<SignedPauli> out;
    for (std::uint64_t xz = 0; xz < (std::uint64_t{1} << (2 * n)); xz++) {
        for (int ph = 0; ph < 4; ph++) {
            out.emplace_back(BitVec::from_uint(xz, n), BitVec::from_uint(xz >> n, n), ph);
        }
    }
    return out;
}

}  // namespace

TEST(PauliMul, XTimesZ) {
    SignedPauli p = pauli_mul(SignedPauli::parse("X"), SignedPauli::parse("Z"));
    EXPECT_TRUE(p.x_bit(0));
    EXPECT_TRUE(p.z_bit(0));
    EXPECT_EQ(p.phase(), 0);
    EXPECT_EQ(p, SignedPauli::parse("-iY"));
}

TEST(PauliMul, ZTimesX) {
    SignedPauli p = pauli_mul(SignedPauli::parse("Z"), SignedPauli::parse("X"));
    EXPECT_EQ(p.phase(), 2);
    EXPECT_EQ(p, SignedPauli::parse("+iY"));
}

TEST(PauliMul, SizeMismatchThrows) {
    EXPECT_THROW(pauli_mul(SignedPauli::parse("X"), SignedPauli::parse("XX")), DimensionError);
    EXPECT_THROW(commutes(SignedPauli::parse("X"), SignedPauli::parse("XX")), DimensionError);
}

TEST(PauliMul, ExhaustiveSmallMatchesDense) {
    for (std::size_t n = 1; n <= 2; n++) {
        auto ps = all_paulis(n);
        for (const auto &p : ps) {
            for (const auto &q : ps) {
                ref::Mat want = ref::mul(ref::pauli_matrix(p), ref::pauli_matrix(q));
                ASSERT_LT(ref::max_diff(want, ref::pauli_matrix(pauli_mul(p, q))), 1e-12) << p.str() << " " << q.str();
            }
        }
    }
}

TEST(PauliMul, ThreeQubitsMatchDense) {
    // Phases only shift the product by a scalar, so phase 0 covers all 64^2 letter pairs.
    std::vector<SignedPauli> ps;
    for (std::uint64_t xz = 0; xz < 64; xz++) {
        ps.emplace_back(BitVec::from_uint(xz, 3), BitVec::from_uint(xz >> 3, 3), static_cast<int>(xz % 4));
    }
    for (const auto &p : ps) {
        for (const auto &q : ps) {
            ref::Mat want = ref::mul(ref::pauli_matrix(p), ref::pauli_matrix(q));
            ASSERT_LT(ref::max_diff(want, ref::pauli_matrix(pauli_mul(p, q))), 1e-12);
        }
    }
}

TEST(PauliMul, RandomSixQubitsMatchDense) {
    Rng rng(21);
    for (int trial = 0; trial < 30; trial++) {
        SignedPauli p = ref::random_pauli(6, rng), q = ref::random_pauli(6, rng);
        ref::Mat want = ref::mul(ref::pauli_matrix(p), ref::pauli_matrix(q));
        EXPECT_LT(ref::max_diff(want, ref::pauli_matrix(pauli_mul(p, q))), 1e-12);
    }
}

TEST(PauliMul, Associative) {
    Rng rng(22);
    for (int trial = 0; trial < 200; trial++) {
        SignedPauli a = ref::random_pauli(5, rng), b = ref::random_pauli(5, rng), c = ref::random_pauli(5, rng);
        EXPECT_EQ(pauli_mul(pauli_mul(a, b), c), pauli_mul(a, pauli_mul(b, c)));
    }
}

TEST(Commutes, Examples) {
    EXPECT_TRUE(commutes(SignedPauli::parse("X"), SignedPauli::parse("X")));
    EXPECT_FALSE(commutes(SignedPauli::parse("X"), SignedPauli::parse("Z")));
    SignedPauli xz = SignedPauli::parse("XZ"), zx = SignedPauli::parse("ZX");
    EXPECT_TRUE(commutes(xz, zx));
    ref::Mat a = ref::pauli_matrix(xz), b = ref::pauli_matrix(zx);
    EXPECT_LT(ref::max_diff(ref::mul(a, b), ref::mul(b, a)), 1e-12);
}

TEST(Commutes, AgreesWithProductOrderExhaustive) {
    auto ps = all_paulis(2);
    for (const auto &p : ps) {
        for (const auto &q : ps) {
            EXPECT_EQ(commutes(p, q), pauli_mul(p, q) == pauli_mul(q, p));
        }
    }
}

TEST(SignedPauli, HermiticityMatchesDense) {
    for (const auto &p : all_paulis(2)) {
        ref::Mat m = ref::pauli_matrix(p);
        bool dense_hermitian = ref::max_diff(m, ref::adjoint(m)) < 1e-12;
        EXPECT_EQ(p.is_hermitian(), dense_hermitian) << p.str();
    }
}

TEST(SignedPauli, ParsePrintRoundTrip) {
    for (const char *s : {"+XIZ", "-iYY", "+i", "-", "+IIII", "-XYZI", "+iZ"}) {
        EXPECT_EQ(SignedPauli::parse(s).str(), s);
    }
    for (const auto &p : all_paulis(3)) {
        EXPECT_EQ(SignedPauli::parse(p.str()), p);
    }
    EXPECT_EQ(SignedPauli::parse("ZZ").str(), "+ZZ");
    EXPECT_EQ(SignedPauli::parse("Y"), SignedPauli::y_on(1, 0));
}

TEST(SignedPauli, ParseRejectsGarbage) {
    EXPECT_THROW(SignedPauli::parse("+XQ"), ParseError);
    EXPECT_THROW(SignedPauli::parse("x"), ParseError);
}

TEST(SignedPauli, MaskLengthsMustAgree) {
    EXPECT_THROW(SignedPauli(BitVec(2), BitVec(3)), DimensionError);
}

TEST(SignedPauli, TensorProductMatchesKron) {
    Rng rng(23);
    for (int trial = 0; trial < 20; trial++) {
        SignedPauli a = ref::random_pauli(2, rng), b = ref::random_pauli(3, rng);
        ref::Mat want = ref::kron(ref::pauli_matrix(b), ref::pauli_matrix(a));
        EXPECT_LT(ref::max_diff(want, ref::pauli_matrix(tensor(a, b))), 1e-12);
    }
}
