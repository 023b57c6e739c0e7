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

#include <sstream>
#include <string>
#include <string_view>

#include "pfsim/circuit_io.hpp"
#include "pfsim/fourier_sim.hpp"

namespace pfsim {

/// Instance file: a header followed by a circuit in the text circuit format.
///
///     zeros 2               # qubits 0..1 start in |0>
///     input magicT(0.3)     # one line per nonstabilizer input, in order
///     input T
///     measured 0 1 3        # or: measured all
///     circuit
///     qubits 4
///     H 0
///     CNOT 0 2
///
/// The inputs must be exactly the trailing qubits of the circuit.
inline SimInstance parse_instance(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    std::size_t zeros = 0;
    bool have_zeros = false;
    std::vector<QubitInput> inputs;
    std::vector<std::size_t> measured;
    bool measure_all = false;
    bool have_measured = false;
    std::string circuit_text;
    bool in_circuit = false;
    while (std::getline(in, raw)) {
        line_no++;
        if (in_circuit) {
            circuit_text += raw + "\n";
            continue;
        }
        auto tok = detail::split_ws(detail::strip_comment(raw));
        if (tok.empty()) {
            continue;
        }
        auto where = [&] { return "line " + std::to_string(line_no) + ": "; };
        if (tok[0] == "zeros" && tok.size() == 2) {
            zeros = detail::parse_index(tok[1], line_no);
            have_zeros = true;
        } else if (tok[0] == "input" && tok.size() >= 2) {
            std::string spec;
            for (std::size_t k = 1; k < tok.size(); k++) {
                spec += tok[k];
            }
            try {
                inputs.push_back(parse_input_spec(spec));
            } catch (const std::exception &e) {
                throw ParseError(where() + e.what());
            }
        } else if (tok[0] == "measured") {
            have_measured = true;
            if (tok.size() == 2 && tok[1] == "all") {
                measure_all = true;
            } else {
                for (std::size_t k = 1; k < tok.size(); k++) {
                    measured.push_back(detail::parse_index(tok[k], line_no));
                }
            }
        } else if (tok[0] == "circuit" && tok.size() == 1) {
            in_circuit = true;
        } else {
            throw ParseError(where() + "unexpected instance header line '" + raw + "'");
        }
    }
    if (!have_zeros || !have_measured || !in_circuit) {
        throw ParseError("instance file needs 'zeros', 'measured' and 'circuit' sections");
    }
    GateList gates = parse_circuit(circuit_text);
    if (gates.n_qubits != zeros + inputs.size()) {
        throw ParseError("circuit has " + std::to_string(gates.n_qubits) + " qubits, header declares " +
                         std::to_string(zeros + inputs.size()));
    }
    if (measure_all) {
        for (std::size_t q = 0; q < gates.n_qubits; q++) {
            measured.push_back(q);
        }
    }
    return SimInstance(zeros, std::move(inputs), from_gates(gates), std::move(measured));
}

/// Canonical instance text; the circuit is re-synthesized from the tableau.
inline std::string print_instance(const SimInstance &inst) {
    std::ostringstream out;
    out << "zeros " << inst.n << "\n";
    for (const auto &q : inst.inputs) {
        out << "input " << q.str() << "\n";
    }
    out << "measured";
    for (std::size_t q : inst.measured) {
        out << " " << q;
    }
    out << "\ncircuit\n" << print_circuit(synthesize(inst.circuit));
    return out.str();
}

}  // namespace pfsim
