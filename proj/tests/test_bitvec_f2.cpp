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

#include "pfsim/f2.hpp"
#include "pfsim/rng.hpp"

using namespace pfsim;

namespace {

F2Matrix random_matrix(std::size_t rows, std::size_t cols, Rng &rng) {
    F2Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; r++) {
        m.row(r) = random_bits(rng, cols);
    }
    return m;
}

// log2 of the number of distinct vectors in the row span.
std::size_t brute_rank(const F2Matrix &m) {
    std::set<BitVec> span;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << m.rows()); s++) {
        BitVec v(m.cols());
        for (std::size_t r = 0; r < m.rows(); r++) {
            if ((s >> r) & 1) {
                v ^= m.row(r);
            }
        }
        span.insert(v);
    }
    std::size_t k = 0;
    while ((std::size_t{1} << k) < span.size()) {
        k++;
    }
    return k;
}

}  // namespace

TEST(BitVec, BasicOps) {
    BitVec a = BitVec::from_string("10110");
    EXPECT_EQ(a.size(), 5u);
    EXPECT_EQ(a.popcount(), 3u);
    EXPECT_EQ(a.str(), "10110");
    EXPECT_EQ(a.find_first(), 0u);
    EXPECT_EQ(a.find_next(1), 2u);
    BitVec b = BitVec::from_uint(0b00101, 5);
    EXPECT_EQ(b.str(), "10100");
    EXPECT_EQ((a ^ b).str(), "00010");
    EXPECT_EQ((a & b).popcount(), 2u);
    EXPECT_TRUE(dot(a, b) == false);
}

TEST(BitVec, WideVectorsCrossWordBoundaries) {
    BitVec v(130);
    v.set(63, true);
    v.set(64, true);
    v.set(129, true);
    EXPECT_EQ(v.popcount(), 3u);
    EXPECT_EQ(v.ones(), (std::vector<std::size_t>{63, 64, 129}));
    EXPECT_EQ(v.find_next(65), 129u);
}

TEST(F2Solve, IdentityExample) {
    auto sol = f2_solve(F2Matrix::identity(3), BitVec{1, 0, 1});
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(sol->particular, (BitVec{1, 0, 1}));
    EXPECT_TRUE(sol->kernel_basis.empty());
}

TEST(F2Solve, InconsistentExample) {
    EXPECT_FALSE(f2_solve(F2Matrix(2, 2), BitVec{1, 0}).has_value());
}

TEST(F2Solve, ShapeMismatchThrows) {
    EXPECT_THROW(f2_solve(F2Matrix(3, 2), BitVec{1, 0}), DimensionError);
}

TEST(F2Solve, RandomSystemsSatisfySubstitution) {
    Rng rng(11);
    for (int trial = 0; trial < 50; trial++) {
        F2Matrix a = random_matrix(20, 30, rng);
        // A consistent right-hand side from a hidden solution.
        BitVec b = a.apply(random_bits(rng, 30));
        auto sol = f2_solve(a, b);
        ASSERT_TRUE(sol.has_value());
        EXPECT_EQ(a.apply(sol->particular), b);
        for (const BitVec &k : sol->kernel_basis) {
            EXPECT_TRUE(a.apply(k).none());
        }
        EXPECT_EQ(f2_rank(a) + sol->kernel_basis.size(), a.cols());
    }
}

TEST(F2Solve, KernelBasisIsIndependent) {
    Rng rng(12);
    F2Matrix a = random_matrix(6, 12, rng);
    auto sol = f2_solve(a, BitVec(6));
    ASSERT_TRUE(sol.has_value());
    F2Matrix k = F2Matrix::from_rows(sol->kernel_basis, 12);
    EXPECT_EQ(f2_rank(k), sol->kernel_basis.size());
}

TEST(F2Rank, Examples) {
    EXPECT_EQ(f2_rank(F2Matrix::identity(7)), 7u);
    F2Matrix ones(4, 4);
    for (std::size_t r = 0; r < 4; r++) {
        for (std::size_t c = 0; c < 4; c++) {
            ones.set(r, c, true);
        }
    }
    EXPECT_EQ(f2_rank(ones), 1u);
    EXPECT_EQ(f2_rank(F2Matrix(0, 5)), 0u);
}

TEST(F2Rank, MatchesBruteForceSpan) {
    Rng rng(13);
    for (int trial = 0; trial < 40; trial++) {
        F2Matrix a = random_matrix(8, 8, rng);
        // Sparse rows make rank deficiency common.
        if (trial % 2) {
            for (std::size_t r = 0; r < 8; r++) {
                a.row(r) &= random_bits(rng, 8);
            }
        }
        EXPECT_EQ(f2_rank(a), brute_rank(a));
    }
}

TEST(F2Rank, RankPlusKernelIsCols) {
    Rng rng(14);
    for (int trial = 0; trial < 30; trial++) {
        std::size_t rows = 1 + uniform_below(rng, 12), cols = 1 + uniform_below(rng, 12);
        F2Matrix a = random_matrix(rows, cols, rng);
        auto sol = f2_solve(a, BitVec(rows));
        ASSERT_TRUE(sol.has_value());
        EXPECT_EQ(f2_rank(a) + sol->kernel_basis.size(), cols);
        EXPECT_EQ(f2_rank(a), f2_rank(a.transposed()));
    }
}

TEST(F2Matrix, RowLengthChecked) {
    EXPECT_THROW(F2Matrix::from_rows({BitVec(3), BitVec(4)}, 3), DimensionError);
}

TEST(SpanReducer, ExpressAndDependencies) {
    SpanReducer red(3, 4);
    EXPECT_TRUE(red.insert(BitVec{1, 1, 0}));
    EXPECT_TRUE(red.insert(BitVec{0, 1, 1}));
    EXPECT_FALSE(red.insert(BitVec{1, 0, 1}));
    EXPECT_EQ(red.rank(), 2u);
    ASSERT_EQ(red.dependencies().size(), 1u);
    EXPECT_EQ(red.dependencies()[0], (BitVec{1, 1, 1, 0}));
    auto s = red.express(BitVec{1, 0, 1});
    ASSERT_TRUE(s.has_value());
    EXPECT_EQ(*s, (BitVec{1, 1, 0, 0}));
    EXPECT_FALSE(red.express(BitVec{1, 0, 0}).has_value());
    red.insert(BitVec{0, 0, 1});
    EXPECT_THROW(red.insert(BitVec{0, 0, 1}), CapacityError);
}
