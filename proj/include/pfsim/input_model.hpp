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
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pfsim/errors.hpp"
#include "pfsim/rng.hpp"
#include "pfsim/tolerances.hpp"

namespace pfsim {

using cplx = std::complex<double>;

/// Row-major 2x2 complex matrix.
using Mat2 = std::array<cplx, 4>;

/// Single-qubit input state, stored by its Bloch vector (r_x, r_y, r_z):
///
///     rho = (I + r_x X + r_y Y + r_z Z) / 2 = (1/2) sum_{s,t} rho_st X^s Z^t
///
/// with rho_00 = 1, rho_10 = r_x, rho_01 = r_z and rho_11 = i r_y.
class QubitInput {
   public:
    QubitInput() = default;
    QubitInput(double rx, double ry, double rz) : r_{rx, ry, rz} {
        if (!std::isfinite(rx) || !std::isfinite(ry) || !std::isfinite(rz)) {
            throw ValidationError("Bloch vector must be finite");
        }
        if (norm() > 1.0 + kTol.bloch_norm_slack) {
            throw ValidationError("Bloch vector has length " + std::to_string(norm()) + " > 1");
        }
    }

    static QubitInput zero() {
        return {0.0, 0.0, 1.0};
    }
    static QubitInput one() {
        return {0.0, 0.0, -1.0};
    }
    static QubitInput plus() {
        return {1.0, 0.0, 0.0};
    }
    static QubitInput minus() {
        return {-1.0, 0.0, 0.0};
    }
    static QubitInput maximally_mixed() {
        return {0.0, 0.0, 0.0};
    }
    /// (|0> + e^{i pi/4}|1>)/sqrt 2.
    static QubitInput t_state() {
        return {M_SQRT1_2, M_SQRT1_2, 0.0};
    }
    /// cos(pi/8)|0> + sin(pi/8)|1>.
    static QubitInput h_state() {
        return {M_SQRT1_2, 0.0, M_SQRT1_2};
    }
    /// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
    static QubitInput from_angles(double theta, double phi) {
        return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
    }

    /// (1 - eps) rho + eps I/2.
    QubitInput depolarized(double eps) const {
        if (!(eps >= 0.0 && eps <= 1.0)) {
            throw DomainError("depolarizing strength must lie in [0, 1]");
        }
        return {(1 - eps) * r_[0], (1 - eps) * r_[1], (1 - eps) * r_[2]};
    }

    double rx() const {
        return r_[0];
    }
    double ry() const {
        return r_[1];
    }
    double rz() const {
        return r_[2];
    }
    const std::array<double, 3> &bloch() const {
        return r_;
    }
    double norm() const {
        return std::sqrt(r_[0] * r_[0] + r_[1] * r_[1] + r_[2] * r_[2]);
    }
    /// Tr rho^2 = (1 + |r|^2) / 2.
    double purity() const {
        return 0.5 * (1.0 + r_[0] * r_[0] + r_[1] * r_[1] + r_[2] * r_[2]);
    }
    bool is_pure() const {
        return purity() >= 1.0 - kTol.purity;
    }

    /// Tr[X^s rho Z^t].
    cplx coefficient(int s, int t) const {
        if (s == 0 && t == 0) {
            return 1.0;
        }
        if (s == 1 && t == 0) {
            return r_[0];
        }
        if (s == 0 && t == 1) {
            return r_[2];
        }
        return {0.0, r_[1]};
    }

    Mat2 density_matrix() const {
        return {cplx(0.5 * (1 + r_[2])), cplx(0.5 * r_[0], -0.5 * r_[1]), cplx(0.5 * r_[0], 0.5 * r_[1]),
                cplx(0.5 * (1 - r_[2]))};
    }

    /// The pure state sigma with rho = (1 - lambda) sigma + lambda I/2. For the
    /// maximally mixed state any sigma works; |0> is returned.
    QubitInput purified() const {
        double r = norm();
        if (r == 0.0) {
            return zero();
        }
        return {r_[0] / r, r_[1] / r, r_[2] / r};
    }

    /// Amplitudes (a0, a1) of a pure input, global phase fixed so a0 is real and >= 0.
    std::array<cplx, 2> amplitudes() const {
        if (!is_pure()) {
            throw DomainError("amplitudes requested for a mixed input");
        }
        double theta = std::acos(std::clamp(r_[2] / norm(), -1.0, 1.0));
        double phi = std::atan2(r_[1], r_[0]);
        return {cplx(std::cos(theta / 2)), std::polar(std::sin(theta / 2), phi)};
    }

    /// "bloch(x,y,z)" with 17 significant digits, parseable by parse_input_spec.
    std::string str() const {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "bloch(%.17g,%.17g,%.17g)", r_[0], r_[1], r_[2]);
        return buf;
    }

    friend bool operator==(const QubitInput &, const QubitInput &) = default;

   private:
    std::array<double, 3> r_{0.0, 0.0, 1.0};
};

inline void require_pure(const QubitInput &q, const char *what) {
    if (!q.is_pure()) {
        throw DomainError(std::string(what) + " is only defined for pure inputs; got purity " +
                          std::to_string(q.purity()));
    }
}

/// lambda = 1 - sqrt(2 Tr rho^2 - 1) = 1 - |r|.
inline double mixedness(const QubitInput &q) {
    double rad = 2.0 * q.purity() - 1.0;
    if (rad < 0.0) {
        if (rad < -kTol.clamp) {
            throw InternalConsistencyError("negative radicand in mixedness");
        }
        rad = 0.0;
    }
    return 1.0 - std::sqrt(rad);
}

/// Maximal overlap with the six single-qubit stabilizer states.
inline double stabilizer_fidelity(const QubitInput &q) {
    require_pure(q, "stabilizer fidelity");
    double m = std::max({std::abs(q.rx()), std::abs(q.ry()), std::abs(q.rz())});
    return 0.5 * (1.0 + m);
}

/// mu = 2 (1 - F) = 1 - max(|r_x|, |r_y|, |r_z|).
inline double magic_mu(const QubitInput &q) {
    require_pure(q, "magic measure mu");
    return 1.0 - std::max({std::abs(q.rx()), std::abs(q.ry()), std::abs(q.rz())});
}

/// Number of Bloch coefficients with magnitude above tol (including rho_00).
inline int pauli_rank_single(const QubitInput &q, double tol = kTol.rank_zero) {
    require_pure(q, "Pauli rank");
    int chi = 0;
    for (int s = 0; s < 2; s++) {
        for (int t = 0; t < 2; t++) {
            if (std::abs(q.coefficient(s, t)) > tol) {
                chi++;
            }
        }
    }
    return chi;
}

/// O = (I + [psi_10 != 0] X + [psi_01 != 0] Z + [psi_11 != 0] i XZ) / 2.
struct ReferenceOperator {
    std::array<cplx, 4> coeff;  // indexed by 2*s + t
    int pauli_rank;

    cplx coefficient(int s, int t) const {
        return coeff[2 * s + t];
    }

    Mat2 matrix() const {
        // X = [[0,1],[1,0]], Z = diag(1,-1), XZ = [[0,-1],[1,0]].
        cplx c00 = coeff[0], c10 = coeff[2], c01 = coeff[1], c11 = coeff[3];
        return {0.5 * (c00 + c01), 0.5 * (c10 - c11), 0.5 * (c10 + c11), 0.5 * (c00 - c01)};
    }
};

inline ReferenceOperator reference_operator(const QubitInput &q, double tol = kTol.rank_zero) {
    require_pure(q, "reference operator");
    ReferenceOperator o{};
    int chi = 0;
    for (int s = 0; s < 2; s++) {
        for (int t = 0; t < 2; t++) {
            bool nz = std::abs(q.coefficient(s, t)) > tol;
            chi += nz ? 1 : 0;
            cplx unit = (s == 1 && t == 1) ? cplx(0.0, 1.0) : cplx(1.0, 0.0);
            o.coeff[2 * s + t] = nz ? unit : cplx(0.0);
        }
    }
    o.pauli_rank = chi;
    return o;
}

/// Pauli rank of an N-qubit pure state: number of (s, t) with
/// |Tr[X^s |psi><psi| Z^t]| > tol. Uses one Walsh-Hadamard transform per s,
/// O(4^N N) overall.
inline std::size_t pauli_rank_n(std::span<const cplx> state, double tol = kTol.rank_zero) {
    std::size_t dim = state.size();
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw DimensionError("state length must be a power of two");
    }
    if (dim > (std::size_t{1} << 12)) {
        throw CapacityError("pauli_rank_n supports at most 12 qubits");
    }
    double nrm = 0.0;
    for (const cplx &a : state) {
        nrm += std::norm(a);
    }
    if (std::abs(nrm - 1.0) > kTol.normalization) {
        throw ValidationError("pauli_rank_n: state is not normalized (norm^2 = " + std::to_string(nrm) + ")");
    }
    std::size_t count = 0;
    std::vector<cplx> buf(dim);
    for (std::size_t s = 0; s < dim; s++) {
        // buf[x] = conj(psi(x)) psi(x ^ s); the transform over x yields all t.
        for (std::size_t x = 0; x < dim; x++) {
            buf[x] = std::conj(state[x]) * state[x ^ s];
        }
        for (std::size_t h = 1; h < dim; h <<= 1) {
            for (std::size_t i = 0; i < dim; i += 2 * h) {
                for (std::size_t j = i; j < i + h; j++) {
                    cplx a = buf[j], b = buf[j + h];
                    buf[j] = a + b;
                    buf[j + h] = a - b;
                }
            }
        }
        for (std::size_t t = 0; t < dim; t++) {
            if (std::abs(buf[t]) > tol) {
                count++;
            }
        }
    }
    return count;
}

/// Haar-random pure state: a uniformly random Bloch direction.
inline QubitInput haar_random_input(Rng &rng) {
    while (true) {
        double x = normal01(rng), y = normal01(rng), z = normal01(rng);
        double r = std::sqrt(x * x + y * y + z * z);
        if (r > 1e-6) {
            return {x / r, y / r, z / r};
        }
    }
}

/// Random mixed state: Haar direction with Bloch length uniform in [0, 1).
inline QubitInput random_mixed_input(Rng &rng) {
    QubitInput d = haar_random_input(rng);
    double len = uniform01(rng);
    return {len * d.rx(), len * d.ry(), len * d.rz()};
}

namespace detail {

inline std::vector<double> parse_args(std::string_view spec, std::string_view body, std::size_t want) {
    std::vector<double> out;
    std::string s(body);
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            double v = std::stod(tok, &used);
            if (tok.find_first_not_of(" \t", used) != std::string::npos) {
                throw std::invalid_argument("trailing");
            }
            out.push_back(v);
        } catch (const std::exception &) {
            throw ParseError("bad number '" + tok + "' in input spec '" + std::string(spec) + "'");
        }
        if (comma == std::string::npos) {
            break;
        }
        pos = comma + 1;
    }
    if (out.size() != want) {
        throw ParseError("input spec '" + std::string(spec) + "' expects " + std::to_string(want) + " argument(s)");
    }
    return out;
}

}  // namespace detail

/// Named-state grammar:
///
///     zero | one | plus | minus | mixed | T | H
///     magicT(eps)            depolarized |T>: (1-eps)|T><T| + eps I/2
///     bloch(rx,ry,rz)
///     angles(theta,phi)
inline QubitInput parse_input_spec(std::string_view spec) {
    std::string_view s = spec;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    if (s == "zero" || s == "0") {
        return QubitInput::zero();
    }
    if (s == "one" || s == "1") {
        return QubitInput::one();
    }
    if (s == "plus" || s == "+") {
        return QubitInput::plus();
    }
    if (s == "minus" || s == "-") {
        return QubitInput::minus();
    }
    if (s == "mixed") {
        return QubitInput::maximally_mixed();
    }
    if (s == "T") {
        return QubitInput::t_state();
    }
    if (s == "H") {
        return QubitInput::h_state();
    }
    auto open = s.find('(');
    if (open != std::string_view::npos && s.back() == ')') {
        std::string_view head = s.substr(0, open);
        std::string_view body = s.substr(open + 1, s.size() - open - 2);
        if (head == "magicT") {
            auto a = detail::parse_args(spec, body, 1);
            return QubitInput::t_state().depolarized(a[0]);
        }
        if (head == "bloch") {
            auto a = detail::parse_args(spec, body, 3);
            return QubitInput(a[0], a[1], a[2]);
        }
        if (head == "angles") {
            auto a = detail::parse_args(spec, body, 2);
            return QubitInput::from_angles(a[0], a[1]);
        }
    }
    throw ParseError("unknown input state spec '" + std::string(spec) + "'");
}

}  // namespace pfsim
