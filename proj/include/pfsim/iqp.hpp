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
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pfsim/bitvec.hpp"
#include "pfsim/circuit_io.hpp"
#include "pfsim/dense.hpp"
#include "pfsim/errors.hpp"
#include "pfsim/f2.hpp"
#include "pfsim/parallel.hpp"
#include "pfsim/rng.hpp"
#include "pfsim/summation.hpp"

namespace pfsim {

/// exp(i pi k / 4), exact for the axis-aligned cases.
inline std::complex<double> omega8(int k) {
    static const std::complex<double> kTable[8] = {
        {1.0, 0.0}, {M_SQRT1_2, M_SQRT1_2}, {0.0, 1.0}, {-M_SQRT1_2, M_SQRT1_2},
        {-1.0, 0.0}, {-M_SQRT1_2, -M_SQRT1_2}, {0.0, -1.0}, {M_SQRT1_2, -M_SQRT1_2}};
    return kTable[((k % 8) + 8) % 8];
}

/// Diagonal part D of an IQP circuit H^n D H^n over {CZ, Z, S, T}, in the
/// folded form with at most one Z, S and T per qubit. A is symmetric with
/// A_ii = gamma_i (S flags) and A_ij = alpha_ij (CZ flags).
struct IqpCircuit {
    std::size_t n = 0;
    F2Matrix a;
    BitVec beta;
    BitVec t;

    IqpCircuit() = default;
    explicit IqpCircuit(std::size_t n_qubits) : n(n_qubits), a(n_qubits, n_qubits), beta(n_qubits), t(n_qubits) {
    }

    BitVec gamma() const {
        BitVec g(n);
        for (std::size_t i = 0; i < n; i++) {
            g.set(i, a.get(i, i));
        }
        return g;
    }

    void set_cz(std::size_t i, std::size_t j, bool v) {
        if (i == j) {
            throw ValidationError("CZ needs two distinct qubits");
        }
        a.set(i, j, v);
        a.set(j, i, v);
    }

    void validate() const {
        if (a.rows() != n || a.cols() != n || beta.size() != n || t.size() != n) {
            throw DimensionError("IQP circuit fields disagree on n");
        }
        if (!a.is_symmetric()) {
            throw ValidationError("IQP matrix A is not symmetric");
        }
    }

    friend bool operator==(const IqpCircuit &x, const IqpCircuit &y) {
        return x.n == y.n && x.a == y.a && x.beta == y.beta && x.t == y.t;
    }
};

/// Each alpha_ij (i < j, row-major), then each beta_i, gamma_i and t_i, is a fair coin.
inline IqpCircuit random_iqp(std::size_t n, Rng &rng) {
    IqpCircuit c(n);
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = i + 1; j < n; j++) {
            c.set_cz(i, j, coin(rng));
        }
    }
    for (std::size_t i = 0; i < n; i++) {
        c.beta.set(i, coin(rng));
    }
    for (std::size_t i = 0; i < n; i++) {
        c.a.set(i, i, coin(rng));
    }
    for (std::size_t i = 0; i < n; i++) {
        c.t.set(i, coin(rng));
    }
    return c;
}

/// Parses
///
///     iqp 3
///     CZ 0 1
///     T 2
///     S 2
///
/// Single-qubit gates fold as T = 1, S = 2, Z = 4 eighth-turns per qubit;
/// repeated CZ pairs cancel.
inline IqpCircuit parse_iqp(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    IqpCircuit c;
    std::vector<int> turns;
    while (std::getline(in, raw)) {
        line_no++;
        auto tok = detail::split_ws(detail::strip_comment(raw));
        if (tok.empty()) {
            continue;
        }
        auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
        if (tok[0] == "iqp") {
            if (have_header) {
                throw ParseError(where() + "duplicate iqp header");
            }
            if (tok.size() != 2) {
                throw ParseError(where() + "expected 'iqp N'");
            }
            c = IqpCircuit(detail::parse_index(tok[1], line_no));
            turns.assign(c.n, 0);
            have_header = true;
            continue;
        }
        if (!have_header) {
            throw ParseError(where() + "gate before the 'iqp N' header");
        }
        auto qubit = [&](const std::string &s) {
            std::size_t q = detail::parse_index(s, line_no);
            if (q >= c.n) {
                throw ParseError(where() + "qubit " + s + " out of range");
            }
            return q;
        };
        if (tok[0] == "CZ") {
            if (tok.size() != 3) {
                throw ParseError(where() + "CZ takes two qubits");
            }
            std::size_t i = qubit(tok[1]), j = qubit(tok[2]);
            if (i == j) {
                throw ParseError(where() + "CZ on a repeated qubit");
            }
            c.set_cz(i, j, !c.a.get(i, j));
            continue;
        }
        int step = tok[0] == "T" ? 1 : tok[0] == "S" ? 2 : tok[0] == "Z" ? 4 : 0;
        if (step == 0) {
            throw ParseError(where() + "unknown IQP gate '" + tok[0] + "'");
        }
        if (tok.size() != 2) {
            throw ParseError(where() + tok[0] + " takes one qubit");
        }
        std::size_t q = qubit(tok[1]);
        turns[q] = (turns[q] + step) % 8;
    }
    if (!have_header) {
        throw ParseError("missing 'iqp N' header");
    }
    for (std::size_t q = 0; q < c.n; q++) {
        c.t.set(q, turns[q] & 1);
        c.a.set(q, q, (turns[q] >> 1) & 1);
        c.beta.set(q, (turns[q] >> 2) & 1);
    }
    return c;
}

/// Canonical text: header, CZ pairs (i < j) in order, then Z, S and T lines by qubit.
inline std::string print_iqp(const IqpCircuit &c) {
    std::ostringstream out;
    out << "iqp " << c.n << "\n";
    for (std::size_t i = 0; i < c.n; i++) {
        for (std::size_t j = i + 1; j < c.n; j++) {
            if (c.a.get(i, j)) {
                out << "CZ " << i << " " << j << "\n";
            }
        }
    }
    for (std::size_t i = 0; i < c.n; i++) {
        if (c.beta[i]) {
            out << "Z " << i << "\n";
        }
    }
    for (std::size_t i = 0; i < c.n; i++) {
        if (c.a.get(i, i)) {
            out << "S " << i << "\n";
        }
    }
    for (std::size_t i = 0; i < c.n; i++) {
        if (c.t[i]) {
            out << "T " << i << "\n";
        }
    }
    return out.str();
}

/// Exponent e in D|x> = exp(i pi e / 4)|x>: 4 beta.x + 2 xAx + t.x mod 8,
/// where xAx = sum_i gamma_i x_i + 2 sum_{i<j} alpha_ij x_i x_j.
inline int phase_exponent(const IqpCircuit &c, const BitVec &x) {
    if (x.size() != c.n) {
        throw DimensionError("phase_exponent: input length differs from n");
    }
    int e = 4 * static_cast<int>(and_popcount(c.beta, x)) + static_cast<int>(and_popcount(c.t, x));
    int quad = 0;
    for (std::size_t i = x.find_first(); i < c.n; i = x.find_next(i + 1)) {
        // Row i restricted to x counts gamma_i once and every CZ partner of i.
        quad += static_cast<int>(and_popcount(c.a.row(i), x));
    }
    // quad = sum_i gamma_i x_i + 2 sum_{i<j} alpha_ij x_i x_j = xAx over the integers.
    e += 2 * quad;
    return ((e % 8) + 8) % 8;
}

inline std::complex<double> phase_function(const IqpCircuit &c, const BitVec &x) {
    return omega8(phase_exponent(c, x));
}

/// D X^s D^dagger = exp(i pi phase / 4) (prod_i S_i^{s_exponents_i}) X^{x_mask} Z^{z_mask}.
struct PushResult {
    int phase = 0;
    BitVec s_exponents;
    BitVec x_mask;
    BitVec z_mask;
};

inline PushResult push_x_through_diagonal(const IqpCircuit &c, const BitVec &s) {
    if (s.size() != c.n) {
        throw DimensionError("push_x_through_diagonal: pattern length differs from n");
    }
    PushResult r{0, c.t & s, s, BitVec(c.n)};
    BitVec g = c.gamma();
    int phase = 4 * static_cast<int>(and_popcount(c.beta, s)) - static_cast<int>(and_popcount(c.t, s)) +
                2 * static_cast<int>(and_popcount(g, s));
    int pairs = 0;
    for (std::size_t i = s.find_first(); i < c.n; i = s.find_next(i + 1)) {
        BitVec row = c.a.row(i);
        row.set(i, false);
        // CZ partner j of an X on i contributes Z_j.
        r.z_mask ^= row;
        pairs += static_cast<int>(and_popcount(row, s));
    }
    r.z_mask ^= g & s;
    // Each unordered pair with both X's was counted twice.
    phase += 4 * (pairs / 2);
    r.phase = ((phase % 8) + 8) % 8;
    return r;
}

namespace detail {

/// <y| H S^c X^s Z^z H |y> for one qubit, exact in {0, +-1, +-i} / 2 sums.
inline std::complex<double> iqp_local_element(bool c, bool s, bool z, bool y) {
    // M = S^c X^s Z^z; entry M[a][b] is nonzero only for a = b ^ s.
    std::complex<double> acc = 0.0;
    for (int b = 0; b < 2; b++) {
        int a = b ^ static_cast<int>(s);
        std::complex<double> m = (z && b) ? -1.0 : 1.0;
        if (c && a) {
            m *= std::complex<double>(0.0, 1.0);
        }
        // <y|H|a> <b|H|y> = (-1)^{y(a+b)} / 2.
        double sign = (y && ((a + b) & 1)) ? -1.0 : 1.0;
        acc += 0.5 * sign * m;
    }
    return acc;
}

}  // namespace detail

/// <y| V Z^s V^dagger |y> prod_i (1 - eps)^{s_i} / 2 with V = H^n D H^n.
inline double iqp_fourier_coefficient(const IqpCircuit &c, const BitVec &y, const BitVec &s, double eps) {
    if (y.size() != c.n || s.size() != c.n) {
        throw DimensionError("iqp_fourier_coefficient: length mismatch");
    }
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw DomainError("eps must lie in [0, 1]");
    }
    PushResult p = push_x_through_diagonal(c, s);
    std::complex<double> v = omega8(p.phase);
    for (std::size_t i = 0; i < c.n; i++) {
        v *= detail::iqp_local_element(p.s_exponents[i], s[i], p.z_mask[i], y[i]);
        if (v == std::complex<double>(0.0)) {
            return 0.0;
        }
    }
    double scale = std::ldexp(std::pow(1.0 - eps, static_cast<double>(s.popcount())), -static_cast<int>(c.n));
    return v.real() * scale;
}

/// Visits every s in F_2^n with |s| <= l, by weight and then lexicographic support.
template <typename Fn>
void for_each_low_weight(std::size_t n, std::size_t l, Fn &&fn) {
    BitVec s(n);
    fn(static_cast<const BitVec &>(s));
    for (std::size_t w = 1; w <= l && w <= n; w++) {
        std::vector<std::size_t> idx(w);
        for (std::size_t k = 0; k < w; k++) {
            idx[k] = k;
        }
        while (true) {
            BitVec v(n);
            for (std::size_t k : idx) {
                v.set(k, true);
            }
            fn(static_cast<const BitVec &>(v));
            std::size_t k = w;
            while (k > 0 && idx[k - 1] == n - w + k - 1) {
                k--;
            }
            if (k == 0) {
                break;
            }
            idx[k - 1]++;
            for (std::size_t j = k; j < w; j++) {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

/// Sum of the coefficients with |s| <= l; exact noisy probability at l = n.
inline double iqp_approx_probability(const IqpCircuit &c, double eps, const BitVec &y, std::size_t l) {
    if (l > c.n) {
        throw DomainError("truncation level exceeds n");
    }
    CompensatedSum acc;
    for_each_low_weight(c.n, l, [&](const BitVec &s) { acc.add(iqp_fourier_coefficient(c, y, s, eps)); });
    return acc.value();
}

inline constexpr std::size_t kIqpMaxBruteQubits = 20;

/// p(y) = |f^(y)|^2 for every y, indexed by y as an integer with bit i = y_i.
inline std::vector<double> iqp_output_distribution(const IqpCircuit &c) {
    if (c.n > kIqpMaxBruteQubits) {
        throw CapacityError("IQP brute force limited to " + std::to_string(kIqpMaxBruteQubits) + " qubits");
    }
    std::size_t dim = std::size_t{1} << c.n;
    std::vector<std::complex<double>> f(dim);
    for (std::size_t x = 0; x < dim; x++) {
        f[x] = phase_function(c, BitVec::from_uint(x, c.n));
    }
    for (std::size_t h = 1; h < dim; h <<= 1) {
        for (std::size_t i = 0; i < dim; i += 2 * h) {
            for (std::size_t j = i; j < i + h; j++) {
                auto u = f[j], v = f[j + h];
                f[j] = u + v;
                f[j + h] = u - v;
            }
        }
    }
    std::vector<double> p(dim);
    double norm = std::ldexp(1.0, -static_cast<int>(2 * c.n));
    for (std::size_t y = 0; y < dim; y++) {
        p[y] = std::norm(f[y]) * norm;
    }
    return p;
}

/// sum_y p(y)^2 by brute force.
inline double iqp_collision_probability(const IqpCircuit &c) {
    CompensatedSum acc;
    for (double v : iqp_output_distribution(c)) {
        acc.add(v * v);
    }
    return acc.value();
}

/// 2^{-rank A}, the collision probability when no T gates are present.
inline double second_moment_exact_no_T(const IqpCircuit &c) {
    c.validate();
    if (c.t.any()) {
        throw DomainError("second_moment_exact_no_T requires t = 0; use second_moment_bound");
    }
    return std::ldexp(1.0, -static_cast<int>(f2_rank(c.a)));
}

/// (3/4)^{|t|} 2^{-rank A(t)}, A(t) being A without the rows and columns flagged in t.
inline double second_moment_bound(const IqpCircuit &c) {
    c.validate();
    std::size_t r = f2_rank(c.a.without_indices(c.t));
    return std::pow(0.75, static_cast<double>(c.t.popcount())) * std::ldexp(1.0, -static_cast<int>(r));
}

inline constexpr std::size_t kGowersMaxQubits = 10;

/// ||f||_{U^2}^4 = sum_y |f^(y)|^4.
inline double gowers_u2_bruteforce(const IqpCircuit &c) {
    if (c.n > kGowersMaxQubits) {
        throw CapacityError("Gowers norm brute force limited to " + std::to_string(kGowersMaxQubits) + " qubits");
    }
    return iqp_collision_probability(c);
}

/// 2^{-(n-1)} - 2^{-2n}.
inline double average_second_moment_formula(std::size_t n) {
    return std::ldexp(1.0, -static_cast<int>(n) + 1) - std::ldexp(1.0, -2 * static_cast<int>(n));
}

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
};

/// Mean of sum_y p_D(y)^2 over random D. Trial k draws D from stream_rng(seed, k).
inline MonteCarloEstimate average_second_moment_mc(std::size_t n, std::size_t trials, std::uint64_t seed,
                                                   std::size_t jobs = 1) {
    std::vector<double> values(trials);
    parallel_for(trials, jobs, [&](std::size_t k) {
        Rng rng = stream_rng(seed, k);
        values[k] = iqp_collision_probability(random_iqp(n, rng));
    });
    RunningStats stats;
    for (double v : values) {
        stats.add(v);
    }
    return {stats.mean(), stats.std_error(), trials};
}

/// Exact average of sum_y p_D(y)^2 over all 2^{3n + n(n-1)/2} flag settings.
inline double average_second_moment_exhaustive(std::size_t n) {
    std::size_t bits = 3 * n + n * (n - 1) / 2;
    if (bits > 20) {
        throw CapacityError("exhaustive IQP average limited to 20 flag bits");
    }
    CompensatedSum acc;
    std::uint64_t count = std::uint64_t{1} << bits;
    for (std::uint64_t code = 0; code < count; code++) {
        IqpCircuit c(n);
        std::size_t k = 0;
        auto next = [&] { return ((code >> k++) & 1) != 0; };
        for (std::size_t i = 0; i < n; i++) {
            for (std::size_t j = i + 1; j < n; j++) {
                c.set_cz(i, j, next());
            }
        }
        for (std::size_t i = 0; i < n; i++) {
            c.beta.set(i, next());
            c.a.set(i, i, next());
            c.t.set(i, next());
        }
        acc.add(iqp_collision_probability(c));
    }
    return acc.value() / static_cast<double>(count);
}

/// Exact output distribution of H^n D H^n on ((1 - eps)|0><0| + eps I/2)^n by
/// dense density-matrix simulation.
inline std::vector<double> iqp_dense_noisy_distribution(const IqpCircuit &c, double eps) {
    std::vector<QubitInput> inputs(c.n, QubitInput::zero().depolarized(eps));
    DenseState st = DenseState::product(inputs, true);
    Mat2 h = detail::gate_mat2(GateType::H);
    for (std::size_t q = 0; q < c.n; q++) {
        st.apply_1q(q, h);
    }
    st.apply_diagonal([&](std::size_t x) { return phase_function(c, BitVec::from_uint(x, c.n)); });
    for (std::size_t q = 0; q < c.n; q++) {
        st.apply_1q(q, h);
    }
    std::vector<double> p(st.dim());
    for (std::size_t y = 0; y < st.dim(); y++) {
        p[y] = st.rho(y, y).real();
    }
    return p;
}

}  // namespace pfsim
