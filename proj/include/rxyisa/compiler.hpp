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

#ifndef RXYISA_COMPILER_HPP
#define RXYISA_COMPILER_HPP

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "rxyisa/errors.hpp"
#include "rxyisa/isa.hpp"
#include "rxyisa/linalg.hpp"
#include "rxyisa/source.hpp"

namespace rxyisa {

// ---------------------------------------------------------------------------
// Decompositions into the native {Rxy, cZ} set.

inline Rxy rx_native(QubitId q, double angle) { return Rxy{q, RotationKey(0.0, angle)}; }
inline Rxy ry_native(QubitId q, double angle) { return Rxy{q, RotationKey(0.5 * kPi, angle)}; }

/// cNOT as Ry(-pi/2), cZ, Ry(pi/2) with both rotations on the target. The cZ
/// is written (target, control).
inline std::vector<Instruction> decompose_cnot(QubitId target, QubitId control) {
    if (target == control) {
        throw SameQubit("cnot operands must differ (" + to_string(target) + ")");
    }
    return {ry_native(target, -0.5 * kPi), CZ{target, control}, ry_native(target, 0.5 * kPi)};
}

/// Controlled-Rx(alpha) on `rotated`, conditioned on `conditioning`:
/// cZ, Rx(-alpha/2), cZ, Rx(alpha/2).
inline std::vector<Instruction> decompose_crx(double alpha, QubitId rotated, QubitId conditioning) {
    if (rotated == conditioning) {
        throw SameQubit("crx operands must differ (" + to_string(rotated) + ")");
    }
    return {CZ{rotated, conditioning}, rx_native(rotated, -0.5 * alpha), CZ{rotated, conditioning},
            rx_native(rotated, 0.5 * alpha)};
}

/// Rz(beta) as two pi rotations about in-plane axes: Rxy(pi/2, pi) then
/// Rxy(beta/2 - pi/2, pi).
inline std::vector<Instruction> decompose_rz(double beta, QubitId q) {
    return {Rxy{q, RotationKey(0.5 * kPi, kPi)}, Rxy{q, RotationKey(0.5 * beta - 0.5 * kPi, kPi)}};
}

inline std::vector<Instruction> lower_gate(const SourceGate &gate) {
    return std::visit(overloaded{
                          [](const Rx &g) -> std::vector<Instruction> { return {rx_native(g.qubit, g.angle)}; },
                          [](const Ry &g) -> std::vector<Instruction> { return {ry_native(g.qubit, g.angle)}; },
                          [](const Rz &g) { return decompose_rz(g.angle, g.qubit); },
                          [](const Cnot &g) { return decompose_cnot(g.target, g.control); },
                          [](const Crx &g) { return decompose_crx(g.angle, g.rotated, g.conditioning); },
                          [](const auto &native) -> std::vector<Instruction> { return {native}; },
                      },
                      gate);
}

/// Lowers every source gate to native instructions. Gates sharing a source
/// slot act on disjoint qubits, so their expansions are interleaved position
/// by position into consecutive native slots.
inline QuantumProgram lower(const SourceProgram &source) {
    validate(source);
    QuantumProgram out;
    out.n_qubits = source.n_qubits;
    for (const auto &slot : source.slots) {
        std::vector<std::vector<Instruction>> expansions;
        std::size_t depth = 0;
        for (const auto &g : slot.instructions) {
            expansions.push_back(lower_gate(g));
            depth = std::max(depth, expansions.back().size());
        }
        if (slot.instructions.empty()) {
            out.add_parallel({});
        }
        for (std::size_t d = 0; d < depth; ++d) {
            std::vector<Instruction> layer;
            for (const auto &e : expansions) {
                if (d < e.size()) layer.push_back(e[d]);
            }
            out.add_parallel(std::move(layer));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Frame rotation z -> y.
//
// Conjugates the program by V = Rx(-pi/2) on every qubit, so V Z V^dagger = Y,
// V X V^dagger = X and V Y V^dagger = -Z. Qubits enter the rotated frame
// (apply V) before their first gate after a z-basis preparation and leave it
// (apply V^dagger) before measurement and at program end. Two-qubit gates keep
// their form; the z-basis roles (cNOT control, cRx conditioning qubit, both cZ
// operands) are wrapped in V^dagger ... V. Adjacent V / V^dagger pairs on the
// same qubit are cancelled.

namespace frame_detail {

inline Rx enter(QubitId q) { return Rx{q, -0.5 * kPi}; }
inline Rx leave(QubitId q) { return Rx{q, 0.5 * kPi}; }

inline bool near_angle(double a, double b) {
    double d = std::remainder(a - b, 2.0 * kPi);
    return std::abs(d) < RotationKey::kTolerance;
}

}  // namespace frame_detail

inline SourceProgram frame_rotate_z_to_y(const SourceProgram &source) {
    using namespace frame_detail;
    if (source.frame == Frame::kY) {
        throw ValidationError("program is already in the y frame");
    }
    validate(source);

    SourceProgram out;
    out.n_qubits = source.n_qubits;
    out.frame = Frame::kY;

    std::vector<bool> in_frame(source.n_qubits, false);
    std::set<QubitId> pending_enter_after;  // V owed after the last emitted slot

    for (const auto &slot : source.slots) {
        std::set<QubitId> entering, unwrap, rewrap;
        std::vector<SourceGate> body;

        auto ensure = [&](QubitId q) {
            if (!in_frame[q.index]) {
                entering.insert(q);
                in_frame[q.index] = true;
            }
        };

        for (const auto &g : slot.instructions) {
            std::visit(overloaded{
                           [&](const Rx &r) {
                               ensure(r.qubit);
                               body.push_back(r);
                           },
                           [&](const Ry &r) {
                               ensure(r.qubit);
                               body.push_back(Rz{r.qubit, -r.angle});
                           },
                           [&](const Rz &r) {
                               ensure(r.qubit);
                               body.push_back(Ry{r.qubit, r.angle});
                           },
                           [&](const Rxy &r) {
                               ensure(r.qubit);
                               const double phi = r.key.phi();
                               if (r.key.is_identity() || near_angle(phi, 0.0) || near_angle(phi, kPi)) {
                                   body.push_back(r);
                               } else if (near_angle(phi, 0.5 * kPi)) {
                                   body.push_back(Rz{r.qubit, -r.key.gamma()});
                               } else if (near_angle(phi, 1.5 * kPi)) {
                                   body.push_back(Rz{r.qubit, r.key.gamma()});
                               } else {
                                   throw UnsupportedGate("frame rotation supports Rxy only about the x or y axis");
                               }
                           },
                           [&](const Cnot &c) {
                               ensure(c.target);
                               ensure(c.control);
                               unwrap.insert(c.control);
                               rewrap.insert(c.control);
                               body.push_back(c);
                           },
                           [&](const Crx &c) {
                               ensure(c.rotated);
                               ensure(c.conditioning);
                               unwrap.insert(c.conditioning);
                               rewrap.insert(c.conditioning);
                               body.push_back(c);
                           },
                           [&](const CZ &c) {
                               ensure(c.a);
                               ensure(c.b);
                               unwrap.insert(c.a);
                               unwrap.insert(c.b);
                               rewrap.insert(c.a);
                               rewrap.insert(c.b);
                               body.push_back(c);
                           },
                           [&](const Measure &m) {
                               if (in_frame[m.qubit.index]) {
                                   unwrap.insert(m.qubit);
                                   in_frame[m.qubit.index] = false;
                               }
                               body.push_back(m);
                           },
                           [&](const Reset &r) {
                               in_frame[r.qubit.index] = false;
                               pending_enter_after.erase(r.qubit);
                               body.push_back(r);
                           },
                       },
                       g);
        }

        // V then V^dagger on the same qubit cancels.
        std::vector<SourceGate> prefix;
        for (QubitId q : pending_enter_after) {
            if (unwrap.erase(q) == 0) prefix.push_back(enter(q));
        }
        for (QubitId q : entering) {
            if (unwrap.erase(q) == 0) prefix.push_back(enter(q));
        }
        for (QubitId q : unwrap) prefix.push_back(leave(q));
        if (!prefix.empty()) out.add_parallel(std::move(prefix));
        out.add_parallel(std::move(body));
        pending_enter_after = std::move(rewrap);
    }

    std::vector<SourceGate> tail;
    for (std::size_t q = 0; q < source.n_qubits; ++q) {
        QubitId id{q};
        if (!in_frame[q]) continue;
        if (pending_enter_after.erase(id) == 0) tail.push_back(leave(id));
    }
    for (QubitId q : pending_enter_after) tail.push_back(enter(q));
    if (!tail.empty()) out.add_parallel(std::move(tail));
    return out;
}

// ---------------------------------------------------------------------------
// Scheduling.

namespace schedule_detail {

inline bool only_rotations(const TimeSlot &slot) {
    return std::all_of(slot.instructions.begin(), slot.instructions.end(),
                       [](const Instruction &i) { return std::holds_alternative<Rxy>(i); });
}

inline bool disjoint(const TimeSlot &a, const TimeSlot &b) {
    std::set<QubitId> used;
    for (const auto &i : a.instructions) used.insert(std::get<Rxy>(i).qubit);
    for (const auto &i : b.instructions) {
        if (used.contains(std::get<Rxy>(i).qubit)) return false;
    }
    return true;
}

}  // namespace schedule_detail

/// Greedy adjacent merge: a slot of single-qubit rotations joins the previous
/// slot when that slot also holds only rotations and the qubits are disjoint.
/// Nothing is reordered.
inline QuantumProgram schedule(const QuantumProgram &program) {
    using namespace schedule_detail;
    QuantumProgram out;
    out.n_qubits = program.n_qubits;
    out.registers = program.registers;
    for (const auto &slot : program.slots) {
        if (!out.slots.empty() && only_rotations(slot) && only_rotations(out.slots.back()) &&
            disjoint(out.slots.back(), slot)) {
            auto &dst = out.slots.back().instructions;
            dst.insert(dst.end(), slot.instructions.begin(), slot.instructions.end());
        } else {
            out.slots.push_back(slot);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Equivalence.

struct EquivalenceReport {
    double phase_invariant_distance = 0.0;
    bool equivalent = false;
};

inline constexpr double kDecompositionTolerance = 1e-10;
inline constexpr double kCircuitTolerance = 1e-9;

/// distance = sqrt(1 - |tr(U^dagger V)| / d), insensitive to global phase. For
/// unitaries this equals ||U - e^{i theta} V||_F / sqrt(2 d) with the phase
/// theta that aligns the two traces, which is how it is evaluated: the
/// difference form keeps full precision near zero where 1 - |tr| / d cancels.
inline EquivalenceReport equivalence_check(const Matrix &u, const Matrix &v, double tol = kDecompositionTolerance) {
    if (u.rows() != u.cols() || v.rows() != v.cols() || u.rows() != v.rows()) {
        throw DimensionMismatch("equivalence_check: " + std::to_string(u.rows()) + "x" + std::to_string(u.cols()) +
                                " vs " + std::to_string(v.rows()) + "x" + std::to_string(v.cols()));
    }
    const double d = static_cast<double>(u.rows());
    const Complex t = (u.adjoint() * v).trace();
    const Complex align = std::abs(t) > 0.0 ? std::conj(t) / std::abs(t) : Complex(1.0);
    const double distance = std::min(1.0, (u - align * v).norm() / std::sqrt(2.0 * d));
    return {distance, distance < tol};
}

inline Matrix sequence_unitary(const std::vector<Instruction> &seq, std::size_t n_qubits) {
    Matrix u = identity(std::size_t{1} << n_qubits);
    for (const auto &i : seq) {
        u = std::visit([&](const auto &op) { return full_matrix(op, n_qubits); }, i) * u;
    }
    return u;
}

// ---------------------------------------------------------------------------
// Pass pipeline.

inline const std::vector<std::string> &known_passes() {
    static const std::vector<std::string> passes = {"frame-rotate", "lower", "schedule"};
    return passes;
}

/// Result of a pass pipeline: a source program until `lower` has run.
using CompiledProgram = std::variant<SourceProgram, QuantumProgram>;

inline CompiledProgram run_passes(const SourceProgram &input, const std::vector<std::string> &passes) {
    CompiledProgram state = input;
    for (const auto &name : passes) {
        if (name == "frame-rotate") {
            auto *src = std::get_if<SourceProgram>(&state);
            if (!src) throw ConfigError("frame-rotate must run before lower");
            state = frame_rotate_z_to_y(*src);
        } else if (name == "lower") {
            auto *src = std::get_if<SourceProgram>(&state);
            if (!src) throw ConfigError("lower may only run once");
            state = lower(*src);
        } else if (name == "schedule") {
            auto *native = std::get_if<QuantumProgram>(&state);
            if (!native) throw ConfigError("schedule requires a lowered program; run lower first");
            state = schedule(*native);
        } else {
            throw ConfigError("unknown pass '" + name + "'");
        }
    }
    return state;
}

}  // namespace rxyisa

#endif  // RXYISA_COMPILER_HPP
