// Copyright 2026 The rxyisa Authors
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

#ifndef RXYISA_ASSEMBLY_HPP
#define RXYISA_ASSEMBLY_HPP

#include <cctype>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rxyisa/errors.hpp"
#include "rxyisa/format.hpp"
#include "rxyisa/isa.hpp"
#include "rxyisa/source.hpp"

// Textual assembly. One statement per line, `#` starts a comment:
//
//   qubits <N>                           optional, must precede statements
//   rxy q<N>, <phi_over_pi>, <gamma_over_pi>
//   cz q<A>, q<B>
//   measure q<N> -> <reg>
//   reset q<N>
//   { stmt | stmt | ... }                one parallel timeslot
//
// The source grammar adds `rx`, `ry`, `rz` (q<N>, <angle_over_pi>),
// `cnot q<target>, q<control>`, `crx q<rotated>, q<conditioning>, <angle>`
// and a `frame y` directive.

namespace rxyisa {

namespace assembly_detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    return out;
}

inline QubitId parse_qubit(std::string_view tok, std::size_t line) {
    if (tok.size() < 2 || tok[0] != 'q') {
        throw ParseError(line, "expected qubit operand, got '" + std::string(tok) + "'");
    }
    std::size_t value = 0;
    for (char c : tok.substr(1)) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            throw ParseError(line, "bad qubit operand '" + std::string(tok) + "'");
        }
        value = value * 10 + static_cast<std::size_t>(c - '0');
    }
    return QubitId{value};
}

inline double parse_angle(std::string_view tok, std::size_t line) {
    auto v = parse_double(tok);
    if (!v || !std::isfinite(*v)) {
        throw ParseError(line, "bad angle '" + std::string(tok) + "'");
    }
    return *v * kPi;
}

inline std::string parse_register(std::string_view tok, std::size_t line) {
    bool ok = !tok.empty() && (std::isalpha(static_cast<unsigned char>(tok[0])) || tok[0] == '_');
    for (char c : tok) ok = ok && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
    if (!ok) {
        throw ParseError(line, "bad register name '" + std::string(tok) + "'");
    }
    return std::string(tok);
}

inline void expect_arity(const std::vector<std::string_view> &args, std::size_t n, std::string_view mnemonic,
                         std::size_t line) {
    if (args.size() != n) {
        throw ParseError(line, std::string(mnemonic) + " takes " + std::to_string(n) + " operands, got " +
                                   std::to_string(args.size()));
    }
}

/// Parses one statement into a source gate. `native_only` rejects mnemonics
/// outside the native set.
inline SourceGate parse_statement(std::string_view stmt, std::size_t line, bool native_only) {
    stmt = trim(stmt);
    std::size_t sp = 0;
    while (sp < stmt.size() && !std::isspace(static_cast<unsigned char>(stmt[sp]))) ++sp;
    std::string mnemonic(stmt.substr(0, sp));
    std::string_view rest = trim(stmt.substr(sp));
    if (mnemonic.empty()) {
        throw ParseError(line, "empty statement");
    }

    if (mnemonic == "measure") {
        auto arrow = rest.find("->");
        if (arrow == std::string_view::npos) {
            throw ParseError(line, "measure requires '-> <register>'");
        }
        return Measure{parse_qubit(trim(rest.substr(0, arrow)), line), parse_register(trim(rest.substr(arrow + 2)), line)};
    }

    auto args = rest.empty() ? std::vector<std::string_view>{} : split(rest, ',');
    if (mnemonic == "reset") {
        expect_arity(args, 1, mnemonic, line);
        return Reset{parse_qubit(args[0], line)};
    }
    if (mnemonic == "rxy") {
        expect_arity(args, 3, mnemonic, line);
        return Rxy{parse_qubit(args[0], line), RotationKey(parse_angle(args[1], line), parse_angle(args[2], line))};
    }
    if (mnemonic == "cz") {
        expect_arity(args, 2, mnemonic, line);
        return CZ{parse_qubit(args[0], line), parse_qubit(args[1], line)};
    }
    if (!native_only) {
        if (mnemonic == "rx" || mnemonic == "ry" || mnemonic == "rz") {
            expect_arity(args, 2, mnemonic, line);
            QubitId q = parse_qubit(args[0], line);
            double a = parse_angle(args[1], line);
            if (mnemonic == "rx") return Rx{q, a};
            if (mnemonic == "ry") return Ry{q, a};
            return Rz{q, a};
        }
        if (mnemonic == "cnot") {
            expect_arity(args, 2, mnemonic, line);
            return Cnot{parse_qubit(args[0], line), parse_qubit(args[1], line)};
        }
        if (mnemonic == "crx") {
            expect_arity(args, 3, mnemonic, line);
            return Crx{parse_qubit(args[0], line), parse_qubit(args[1], line), parse_angle(args[2], line)};
        }
    }
    throw ParseError(line, "unknown mnemonic '" + mnemonic + "'");
}

struct RawProgram {
    std::optional<std::size_t> declared_qubits;
    Frame frame = Frame::kZ;
    std::vector<std::pair<std::size_t, std::vector<SourceGate>>> slots;  // (line, gates)
};

inline RawProgram parse_raw(std::string_view text, bool native_only) {
    RawProgram raw;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;

        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) {
            if (end == text.size()) break;
            continue;
        }

        if (line.starts_with("qubits ") || line == "qubits") {
            if (!raw.slots.empty() || raw.declared_qubits) {
                throw ParseError(line_no, "'qubits' must appear once, before any statement");
            }
            auto v = parse_double(trim(line.substr(6)));
            if (!v || *v < 0 || *v != std::floor(*v) || *v > 30) {
                throw ParseError(line_no, "bad qubit count");
            }
            raw.declared_qubits = static_cast<std::size_t>(*v);
        } else if (line.starts_with("frame ")) {
            if (native_only) throw ParseError(line_no, "unknown mnemonic 'frame'");
            auto f = trim(line.substr(6));
            if (f == "y") {
                raw.frame = Frame::kY;
            } else if (f == "z") {
                raw.frame = Frame::kZ;
            } else {
                throw ParseError(line_no, "frame must be 'y' or 'z'");
            }
        } else if (line.front() == '{') {
            if (line.back() != '}') {
                throw ParseError(line_no, "unterminated parallel slot");
            }
            std::string_view body = trim(line.substr(1, line.size() - 2));
            std::vector<SourceGate> gates;
            if (!body.empty()) {
                for (auto stmt : split(body, '|')) gates.push_back(parse_statement(stmt, line_no, native_only));
            }
            raw.slots.emplace_back(line_no, std::move(gates));
        } else {
            raw.slots.emplace_back(line_no, std::vector<SourceGate>{parse_statement(line, line_no, native_only)});
        }
        if (end == text.size()) break;
    }
    return raw;
}

template <class Gate, class Convert>
BasicProgram<Gate> assemble(const RawProgram &raw, Convert convert) {
    BasicProgram<Gate> program;
    std::size_t max_index = 0;
    bool any = false;
    for (const auto &[line, gates] : raw.slots) {
        for (const auto &g : gates) {
            for (QubitId q : operand_qubits(g)) {
                max_index = std::max(max_index, q.index);
                any = true;
            }
        }
    }
    program.n_qubits = raw.declared_qubits.value_or(any ? max_index + 1 : 0);
    for (const auto &[line, gates] : raw.slots) {
        std::vector<Gate> converted;
        converted.reserve(gates.size());
        for (const auto &g : gates) converted.push_back(convert(g));
        try {
            program.add_parallel(std::move(converted));
        } catch (const ValidationError &e) {
            throw ValidationError("line " + std::to_string(line) + ": " + e.what());
        }
    }
    return program;
}

inline std::string phi_text(const RotationKey &k) {
    double p = k.phi_over_pi();
    if (p > 1.0) p -= 2.0;
    return format_double(p, 15);
}

inline std::string angle_text(double radians) { return format_double(radians / kPi, 15); }

inline std::string statement_text(const SourceGate &g) {
    return std::visit(
        overloaded{
            [](const Rxy &r) {
                return "rxy " + to_string(r.qubit) + ", " + phi_text(r.key) + ", " + format_double(r.key.gamma_over_pi(), 15);
            },
            [](const CZ &c) { return "cz " + to_string(c.a) + ", " + to_string(c.b); },
            [](const Measure &m) { return "measure " + to_string(m.qubit) + " -> " + m.reg; },
            [](const Reset &r) { return "reset " + to_string(r.qubit); },
            [](const Rx &r) { return "rx " + to_string(r.qubit) + ", " + angle_text(r.angle); },
            [](const Ry &r) { return "ry " + to_string(r.qubit) + ", " + angle_text(r.angle); },
            [](const Rz &r) { return "rz " + to_string(r.qubit) + ", " + angle_text(r.angle); },
            [](const Cnot &c) { return "cnot " + to_string(c.target) + ", " + to_string(c.control); },
            [](const Crx &c) {
                return "crx " + to_string(c.rotated) + ", " + to_string(c.conditioning) + ", " + angle_text(c.angle);
            },
        },
        g);
}

inline SourceGate widen(const Instruction &i) {
    return std::visit([](const auto &op) -> SourceGate { return op; }, i);
}

template <class Gate, class ToSource>
std::string emit_slots(const BasicProgram<Gate> &program, ToSource to_source) {
    std::ostringstream out;
    out << "qubits " << program.n_qubits << "\n";
    for (const auto &slot : program.slots) {
        if (slot.instructions.size() == 1) {
            out << statement_text(to_source(slot.instructions[0])) << "\n";
            continue;
        }
        out << "{";
        for (std::size_t i = 0; i < slot.instructions.size(); ++i) {
            out << (i == 0 ? " " : " | ") << statement_text(to_source(slot.instructions[i]));
        }
        out << (slot.instructions.empty() ? "}" : " }") << "\n";
    }
    return out.str();
}

}  // namespace assembly_detail

/// Parses native assembly. Throws ParseError (with line number) on syntax
/// errors and ValidationError when a slot reuses a qubit.
inline QuantumProgram parse_program(std::string_view text) {
    auto raw = assembly_detail::parse_raw(text, /*native_only=*/true);
    return assembly_detail::assemble<Instruction>(raw, [](const SourceGate &g) {
        return std::visit(
            [](const auto &op) -> Instruction {
                using T = std::decay_t<decltype(op)>;
                if constexpr (std::is_constructible_v<Instruction, T>) {
                    return op;
                } else {
                    throw ParseError(0, "non-native gate");  // unreachable: rejected by the parser
                }
            },
            g);
    });
}

inline std::string emit_program(const QuantumProgram &program) {
    return assembly_detail::emit_slots(program, assembly_detail::widen);
}

/// Parses the extended source grammar (native statements plus rx/ry/rz/cnot/crx).
inline SourceProgram parse_source_program(std::string_view text) {
    auto raw = assembly_detail::parse_raw(text, /*native_only=*/false);
    auto base = assembly_detail::assemble<SourceGate>(raw, [](const SourceGate &g) { return g; });
    SourceProgram program;
    static_cast<BasicProgram<SourceGate> &>(program) = std::move(base);
    program.frame = raw.frame;
    return program;
}

inline std::string emit_source_program(const SourceProgram &program) {
    std::string body = assembly_detail::emit_slots(program, [](const SourceGate &g) { return g; });
    if (program.frame == Frame::kY) {
        auto nl = body.find('\n');
        body.insert(nl + 1, "frame y\n");
    }
    return body;
}

}  // namespace rxyisa

#endif  // RXYISA_ASSEMBLY_HPP
