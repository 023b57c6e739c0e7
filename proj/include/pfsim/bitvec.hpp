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
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "pfsim/errors.hpp"

namespace pfsim {

/// Fixed-length bit vector over F2, packed into 64-bit words.
///
/// Bits past `size()` in the last word are kept zero so that word-wise
/// equality, hashing and popcounts need no masking.
class BitVec {
   public:
    using word_t = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    BitVec() = default;
    explicit BitVec(std::size_t n) : size_(n), words_(word_count(n), 0) {
    }
    BitVec(std::initializer_list<int> bits) : BitVec(bits.size()) {
        std::size_t k = 0;
        for (int b : bits) {
            set(k++, b != 0);
        }
    }

    /// Low `n` bits of `value`, bit k of the integer landing at index k.
    static BitVec from_uint(std::uint64_t value, std::size_t n) {
        BitVec r(n);
        if (n > 0) {
            r.words_[0] = n >= kWordBits ? value : (value & ((word_t{1} << n) - 1));
        }
        return r;
    }

    /// Parses a string of '0'/'1' characters; index 0 is the first character.
    static BitVec from_string(std::string_view s) {
        BitVec r(s.size());
        for (std::size_t k = 0; k < s.size(); k++) {
            if (s[k] == '1') {
                r.set(k, true);
            } else if (s[k] != '0') {
                throw ParseError("bit string may only contain '0' and '1': " + std::string(s));
            }
        }
        return r;
    }

    static constexpr std::size_t word_count(std::size_t n) {
        return (n + kWordBits - 1) / kWordBits;
    }

    std::size_t size() const {
        return size_;
    }
    bool empty() const {
        return size_ == 0;
    }

    bool operator[](std::size_t k) const {
        return (words_[k / kWordBits] >> (k % kWordBits)) & 1u;
    }
    bool get(std::size_t k) const {
        return (*this)[k];
    }
    void set(std::size_t k, bool v) {
        word_t m = word_t{1} << (k % kWordBits);
        if (v) {
            words_[k / kWordBits] |= m;
        } else {
            words_[k / kWordBits] &= ~m;
        }
    }
    void flip(std::size_t k) {
        words_[k / kWordBits] ^= word_t{1} << (k % kWordBits);
    }

    BitVec &operator^=(const BitVec &o) {
        check_same_size(o);
        for (std::size_t w = 0; w < words_.size(); w++) {
            words_[w] ^= o.words_[w];
        }
        return *this;
    }
    BitVec &operator&=(const BitVec &o) {
        check_same_size(o);
        for (std::size_t w = 0; w < words_.size(); w++) {
            words_[w] &= o.words_[w];
        }
        return *this;
    }
    BitVec &operator|=(const BitVec &o) {
        check_same_size(o);
        for (std::size_t w = 0; w < words_.size(); w++) {
            words_[w] |= o.words_[w];
        }
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec &b) {
        a ^= b;
        return a;
    }
    friend BitVec operator&(BitVec a, const BitVec &b) {
        a &= b;
        return a;
    }
    friend BitVec operator|(BitVec a, const BitVec &b) {
        a |= b;
        return a;
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (word_t w : words_) {
            c += static_cast<std::size_t>(std::popcount(w));
        }
        return c;
    }
    bool any() const {
        return std::any_of(words_.begin(), words_.end(), [](word_t w) { return w != 0; });
    }
    bool none() const {
        return !any();
    }

    /// Parity of the inner product <a, b> over F2.
    friend bool dot(const BitVec &a, const BitVec &b) {
        a.check_same_size(b);
        word_t acc = 0;
        for (std::size_t w = 0; w < a.words_.size(); w++) {
            acc ^= a.words_[w] & b.words_[w];
        }
        return std::popcount(acc) & 1;
    }
    /// popcount(a & b) without allocating.
    friend std::size_t and_popcount(const BitVec &a, const BitVec &b) {
        a.check_same_size(b);
        std::size_t c = 0;
        for (std::size_t w = 0; w < a.words_.size(); w++) {
            c += static_cast<std::size_t>(std::popcount(a.words_[w] & b.words_[w]));
        }
        return c;
    }

    /// Index of the lowest set bit at or after `from`, or size() if none.
    std::size_t find_next(std::size_t from) const {
        if (from >= size_) {
            return size_;
        }
        std::size_t w = from / kWordBits;
        word_t cur = words_[w] & (~word_t{0} << (from % kWordBits));
        while (true) {
            if (cur != 0) {
                return w * kWordBits + static_cast<std::size_t>(std::countr_zero(cur));
            }
            if (++w >= words_.size()) {
                return size_;
            }
            cur = words_[w];
        }
    }
    std::size_t find_first() const {
        return find_next(0);
    }

    std::vector<std::size_t> ones() const {
        std::vector<std::size_t> r;
        for (std::size_t k = find_first(); k < size_; k = find_next(k + 1)) {
            r.push_back(k);
        }
        return r;
    }

    /// Bits as an integer (bit k -> 2^k). Requires size() <= 64.
    std::uint64_t to_uint() const {
        if (size_ > kWordBits) {
            throw CapacityError("BitVec::to_uint needs at most 64 bits, have " + std::to_string(size_));
        }
        return words_.empty() ? 0 : words_[0];
    }

    std::string str() const {
        std::string s(size_, '0');
        for (std::size_t k = 0; k < size_; k++) {
            if ((*this)[k]) {
                s[k] = '1';
            }
        }
        return s;
    }

    /// Entries at the listed positions, in order.
    BitVec gather(const std::vector<std::size_t> &positions) const {
        BitVec r(positions.size());
        for (std::size_t k = 0; k < positions.size(); k++) {
            r.set(k, (*this)[positions[k]]);
        }
        return r;
    }

    const std::vector<word_t> &words() const {
        return words_;
    }

    friend bool operator==(const BitVec &a, const BitVec &b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }
    friend bool operator<(const BitVec &a, const BitVec &b) {
        if (a.size_ != b.size_) {
            return a.size_ < b.size_;
        }
        return a.words_ < b.words_;
    }

   private:
    void check_same_size(const BitVec &o) const {
        if (size_ != o.size_) {
            throw DimensionError("bit vector length mismatch: " + std::to_string(size_) + " vs " +
                                 std::to_string(o.size_));
        }
    }

    std::size_t size_ = 0;
    std::vector<word_t> words_;
};

}  // namespace pfsim
