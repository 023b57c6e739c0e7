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

#include <optional>
#include <string>
#include <vector>

#include "pfsim/bitvec.hpp"
#include "pfsim/errors.hpp"

namespace pfsim {

/// Dense matrix over F2 stored as packed rows.
class F2Matrix {
   public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {
    }

    static F2Matrix identity(std::size_t n) {
        F2Matrix m(n, n);
        for (std::size_t k = 0; k < n; k++) {
            m.set(k, k, true);
        }
        return m;
    }
    static F2Matrix from_rows(std::vector<BitVec> rows, std::size_t cols) {
        F2Matrix m;
        m.cols_ = cols;
        for (const auto &r : rows) {
            if (r.size() != cols) {
                throw DimensionError("F2Matrix row has length " + std::to_string(r.size()) + ", expected " +
                                     std::to_string(cols));
            }
        }
        m.rows_ = std::move(rows);
        return m;
    }

    std::size_t rows() const {
        return rows_.size();
    }
    std::size_t cols() const {
        return cols_;
    }
    bool get(std::size_t r, std::size_t c) const {
        return rows_[r][c];
    }
    void set(std::size_t r, std::size_t c, bool v) {
        rows_[r].set(c, v);
    }
    const BitVec &row(std::size_t r) const {
        return rows_[r];
    }
    BitVec &row(std::size_t r) {
        return rows_[r];
    }

    F2Matrix transposed() const {
        F2Matrix t(cols_, rows_.size());
        for (std::size_t r = 0; r < rows_.size(); r++) {
            for (std::size_t c = rows_[r].find_first(); c < cols_; c = rows_[r].find_next(c + 1)) {
                t.set(c, r, true);
            }
        }
        return t;
    }

    /// A * v.
    BitVec apply(const BitVec &v) const {
        if (v.size() != cols_) {
            throw DimensionError("F2Matrix::apply: vector length " + std::to_string(v.size()) + " != cols " +
                                 std::to_string(cols_));
        }
        BitVec out(rows_.size());
        for (std::size_t r = 0; r < rows_.size(); r++) {
            out.set(r, dot(rows_[r], v));
        }
        return out;
    }

    /// Removes every row and column whose index is set in `mask` (square matrices).
    F2Matrix without_indices(const BitVec &mask) const {
        if (rows() != cols_ || mask.size() != cols_) {
            throw DimensionError("without_indices needs a square matrix and a matching mask");
        }
        std::vector<std::size_t> keep;
        for (std::size_t k = 0; k < cols_; k++) {
            if (!mask[k]) {
                keep.push_back(k);
            }
        }
        F2Matrix m(keep.size(), keep.size());
        for (std::size_t a = 0; a < keep.size(); a++) {
            for (std::size_t b = 0; b < keep.size(); b++) {
                m.set(a, b, get(keep[a], keep[b]));
            }
        }
        return m;
    }

    bool is_symmetric() const {
        if (rows() != cols_) {
            return false;
        }
        for (std::size_t a = 0; a < cols_; a++) {
            for (std::size_t b = a + 1; b < cols_; b++) {
                if (get(a, b) != get(b, a)) {
                    return false;
                }
            }
        }
        return true;
    }

    friend bool operator==(const F2Matrix &a, const F2Matrix &b) {
        return a.cols_ == b.cols_ && a.rows_ == b.rows_;
    }

   private:
    std::size_t cols_ = 0;
    std::vector<BitVec> rows_;
};

/// Incremental basis of a subspace of F2^dim that remembers, for every
/// reduced vector, which inserted vectors were summed to produce it.
///
/// Inserting vectors v_0..v_{r-1} and then calling `express(w)` answers
/// "which subset S has sum_{i in S} v_i == w", while `dependencies()` lists
/// the subsets summing to zero (a basis of the relation kernel).
class SpanReducer {
   public:
    SpanReducer(std::size_t dim, std::size_t max_inputs) : dim_(dim), max_inputs_(max_inputs) {
    }

    /// Adds v as input number `count()`. Returns true if v was independent.
    bool insert(BitVec v) {
        if (v.size() != dim_) {
            throw DimensionError("SpanReducer::insert: vector length mismatch");
        }
        if (inputs_ >= max_inputs_) {
            throw CapacityError("SpanReducer: more inputs than declared");
        }
        BitVec combo(max_inputs_);
        combo.set(inputs_, true);
        inputs_++;
        reduce(v, combo);
        std::size_t p = v.find_first();
        if (p >= dim_) {
            dependencies_.push_back(std::move(combo));
            return false;
        }
        basis_.push_back({std::move(v), std::move(combo), p});
        return true;
    }

    /// A subset (over inputs) whose sum equals w, or nullopt if w is outside the span.
    std::optional<BitVec> express(BitVec w) const {
        if (w.size() != dim_) {
            throw DimensionError("SpanReducer::express: vector length mismatch");
        }
        BitVec combo(max_inputs_);
        reduce(w, combo);
        if (w.any()) {
            return std::nullopt;
        }
        return combo;
    }

    std::size_t rank() const {
        return basis_.size();
    }
    std::size_t count() const {
        return inputs_;
    }
    const std::vector<BitVec> &dependencies() const {
        return dependencies_;
    }

   private:
    struct Row {
        BitVec vec;
        BitVec combo;
        std::size_t pivot;
    };

    // Basis rows are kept in insertion order; each has a distinct pivot that is
    // cleared from every later row, so a single forward pass fully reduces.
    void reduce(BitVec &v, BitVec &combo) const {
        for (const Row &row : basis_) {
            if (v[row.pivot]) {
                v ^= row.vec;
                combo ^= row.combo;
            }
        }
    }

    std::size_t dim_;
    std::size_t max_inputs_;
    std::size_t inputs_ = 0;
    std::vector<Row> basis_;
    std::vector<BitVec> dependencies_;
};

struct F2Solution {
    BitVec particular;
    std::vector<BitVec> kernel_basis;
};

/// Solves A x = b over F2. Returns one solution plus a basis of ker(A), or
/// nullopt when the system is inconsistent.
inline std::optional<F2Solution> f2_solve(const F2Matrix &a, const BitVec &b) {
    if (b.size() != a.rows()) {
        throw DimensionError("f2_solve: rhs length " + std::to_string(b.size()) + " != rows " +
                             std::to_string(a.rows()));
    }
    // Columns of A are the vectors being combined.
    F2Matrix cols = a.transposed();
    SpanReducer red(a.rows(), a.cols());
    for (std::size_t c = 0; c < a.cols(); c++) {
        red.insert(cols.row(c));
    }
    auto x = red.express(b);
    if (!x) {
        return std::nullopt;
    }
    return F2Solution{std::move(*x), red.dependencies()};
}

/// Rank over F2.
inline std::size_t f2_rank(const F2Matrix &a) {
    SpanReducer red(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); r++) {
        red.insert(a.row(r));
    }
    return red.rank();
}

}  // namespace pfsim
