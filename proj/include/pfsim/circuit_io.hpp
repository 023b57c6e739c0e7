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

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pfsim/errors.hpp"
#include "pfsim/tableau.hpp"

namespace pfsim {

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

inline std::string_view strip_comment(std::string_view line) {
    auto p = line.find('#');
    return p == std::string_view::npos ? line : line.substr(0, p);
}

inline std::uint32_t parse_index(const std::string &tok, std::size_t line_no) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("line " + std::to_string(line_no) + ": expected a qubit index, got '" + tok + "'");
    }
    unsigned long v = std::stoul(tok);
    if (v > UINT32_MAX) {
        throw ParseError("line " + std::to_string(line_no) + ": qubit index too large");
    }
    return static_cast<std::uint32_t>(v);
}

}  // namespace detail

/// Parses the text circuit format:
///
///     # comment
///     qubits 3
///     H 0
///     CNOT 0 1
///     CZ 1 2
///
/// The `qubits` header must precede every gate line.
inline GateList parse_circuit(std::string_view text) {
    GateList out;
    bool have_header = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        line_no++;
        auto toks = detail::split_ws(detail::strip_comment(text.substr(start, end - start)));
        start = end + 1;
        if (toks.empty()) {
            continue;
        }
        const std::string &op = toks[0];
        if (op == "qubits") {
            if (have_header || toks.size() != 2) {
                throw ParseError("line " + std::to_string(line_no) + ": malformed or repeated 'qubits' header");
            }
            out.n_qubits = detail::parse_index(toks[1], line_no);
            have_header = true;
            continue;
        }
        if (!have_header) {
            throw ParseError("line " + std::to_string(line_no) + ": gate before 'qubits' header");
        }
        static const std::pair<const char *, GateType> kNames[] = {
            {"H", GateType::H},   {"S", GateType::S},       {"X", GateType::X},   {"Y", GateType::Y},
            {"Z", GateType::Z},   {"CNOT", GateType::CNOT}, {"CZ", GateType::CZ}, {"SWAP", GateType::SWAP},
        };
        bool found = false;
        for (const auto &[name, type] : kNames) {
            if (op == name) {
                std::size_t want = is_two_qubit(type) ? 3 : 2;
                if (toks.size() != want) {
                    throw ParseError("line " + std::to_string(line_no) + ": " + op + " takes " +
                                     std::to_string(want - 1) + " qubit index(es)");
                }
                Gate g{type, detail::parse_index(toks[1], line_no), 0};
                if (want == 3) {
                    g.b = detail::parse_index(toks[2], line_no);
                }
                out.gates.push_back(g);
                found = true;
                break;
            }
        }
        if (!found) {
            throw ParseError("line " + std::to_string(line_no) + ": unknown gate '" + op + "'");
        }
        if (start > text.size()) {
            break;
        }
    }
    if (!have_header) {
        throw ParseError("circuit text has no 'qubits N' header");
    }
    out.validate();
    return out;
}

/// Canonical text form; parse_circuit(print_circuit(g)) == g.
inline std::string print_circuit(const GateList &g) {
    std::string s = "qubits " + std::to_string(g.n_qubits) + "\n";
    for (const Gate &gate : g.gates) {
        s += gate_name(gate.type);
        s += ' ';
        s += std::to_string(gate.a);
        if (is_two_qubit(gate.type)) {
            s += ' ';
            s += std::to_string(gate.b);
        }
        s += '\n';
    }
    return s;
}

}  // namespace pfsim
