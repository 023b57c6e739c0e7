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

#include <stdexcept>
#include <string>

namespace pfsim {

/// Operand sizes disagree (qubit counts, vector lengths, matrix shapes).
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A value violates a structural invariant (non-Hermitian Pauli, broken tableau, bad index).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A numerical argument lies outside the domain where the quantity is defined.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A caller-side precondition that is not a plain shape check (e.g. operators must commute).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// A size or memory limit would be exceeded.
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

/// An internal cross-check failed; indicates a bug rather than bad input.
struct InternalConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Malformed text input (circuit files, Pauli literals, state specs).
struct ParseError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

}  // namespace pfsim
