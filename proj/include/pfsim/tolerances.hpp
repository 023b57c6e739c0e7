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

namespace pfsim {

/// Every numerical threshold used by the library, in one place.
struct Tolerances {
    double purity = 1e-12;             // Tr rho^2 >= 1 - purity counts as pure
    double rank_zero = 1e-9;           // |coefficient| <= rank_zero counts as zero for Pauli rank
    double clamp = 1e-12;              // negative radicands down to -clamp are clamped to 0
    double bloch_norm_slack = 1e-12;   // |r| may exceed 1 by this much
    double normalization = 1e-10;      // |<psi|psi> - 1| allowed for dense inputs
    double imaginary_residue = 1e-10;  // |Im| allowed on quantities that must be real
};

inline constexpr Tolerances kTol{};

}  // namespace pfsim
