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

#ifndef RXYISA_ISA_HPP
#define RXYISA_ISA_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "rxyisa/errors.hpp"
#include "rxyisa/linalg.hpp"

namespace rxyisa {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct QubitId {
    std::size_t index = 0;
    auto operator<=>(const QubitId &) const = default;
};

inline std::string to_string(QubitId q) { return "q" + std::to_string(q.index); }

/// Canonical identity of a single-qubit rotation Rxy(phi, gamma).
///
/// phi is reduced into [0, 2pi) and gamma into (-2pi, 2pi]. A zero rotation
/// forces phi to 0. Two keys are equal when both canonical angles agree to
/// within kTolerance radians.
class RotationKey {
   public:
    static constexpr double kTolerance = 1e-12;

    RotationKey() = default;
    RotationKey(double phi, double gamma) {
        double g = std::fmod(gamma, 4.0 * kPi);
        if (g > 2.0 * kPi) g -= 4.0 * kPi;
        if (g <= -2.0 * kPi) g += 4.0 * kPi;
        if (std::abs(g - 2.0 * kPi) < kTolerance || std::abs(g + 2.0 * kPi) < kTolerance) g = 2.0 * kPi;
        if (std::abs(g) < kTolerance) {
            phi_ = 0.0;
            gamma_ = 0.0;
            return;
        }
        double f = std::fmod(phi, 2.0 * kPi);
        if (f < 0.0) f += 2.0 * kPi;
        if (f >= 2.0 * kPi - kTolerance || f < kTolerance) f = 0.0;
        phi_ = f;
        gamma_ = g;
    }

    static RotationKey from_units_of_pi(double phi_over_pi, double gamma_over_pi) {
        return RotationKey(phi_over_pi * kPi, gamma_over_pi * kPi);
    }

    double phi() const noexcept { return phi_; }
    double gamma() const noexcept { return gamma_; }
    double phi_over_pi() const noexcept { return phi_ / kPi; }
    double gamma_over_pi() const noexcept { return gamma_ / kPi; }
    bool is_identity() const noexcept { return gamma_ == 0.0; }

    friend bool operator==(const RotationKey &a, const RotationKey &b) {
        return std::abs(a.phi_ - b.phi_) < kTolerance && std::abs(a.gamma_ - b.gamma_) < kTolerance;
    }
    friend bool operator<(const RotationKey &a, const RotationKey &b) {
        if (std::abs(a.phi_ - b.phi_) >= kTolerance) return a.phi_ < b.phi_;
        if (std::abs(a.gamma_ - b.gamma_) >= kTolerance) return a.gamma_ < b.gamma_;
        return false;
    }

   private:
    double phi_ = 0.0;
    double gamma_ = 0.0;
};

using RotationSet = std::set<RotationKey>;

struct Rxy {
    QubitId qubit;
    RotationKey key;
    bool operator==(const Rxy &) const = default;
};

/// Controlled-Z. Symmetric; operand order is kept only for display.
struct CZ {
    QubitId a;
    QubitId b;
    bool operator==(const CZ &) const = default;
};

struct Measure {
    QubitId qubit;
    std::string reg;
    bool operator==(const Measure &) const = default;
};

struct Reset {
    QubitId qubit;
    bool operator==(const Reset &) const = default;
};

using Instruction = std::variant<Rxy, CZ, Measure, Reset>;

inline std::vector<QubitId> operand_qubits(const Rxy &g) { return {g.qubit}; }
inline std::vector<QubitId> operand_qubits(const CZ &g) { return {g.a, g.b}; }
inline std::vector<QubitId> operand_qubits(const Measure &g) { return {g.qubit}; }
inline std::vector<QubitId> operand_qubits(const Reset &g) { return {g.qubit}; }

template <class... Ts>
std::vector<QubitId> operand_qubits(const std::variant<Ts...> &g) {
    return std::visit([](const auto &op) { return operand_qubits(op); }, g);
}

template <class Gate>
bool is_non_unitary(const Gate &g) {
    return std::holds_alternative<Measure>(g) || std::holds_alternative<Reset>(g);
}

/// Instructions that execute in parallel. No qubit may appear twice.
template <class Gate>
struct BasicTimeSlot {
    std::vector<Gate> instructions;
    bool operator==(const BasicTimeSlot &) const = default;
};

/// A program over some gate vocabulary, organized into sequential timeslots.
/// Measurement registers are single-bit and declared on first use.
template <class Gate>
struct BasicProgram {
    std::size_t n_qubits = 0;
    std::vector<BasicTimeSlot<Gate>> slots;
    std::map<std::string, std::size_t> registers;

    bool operator==(const BasicProgram &) const = default;

    /// Appends `gates` as one parallel slot after validating it.
    BasicProgram &add_parallel(std::vector<Gate> gates) {
        BasicTimeSlot<Gate> slot{std::move(gates)};
        check_slot(slot, n_qubits);
        declare_registers(slot);
        slots.push_back(std::move(slot));
        return *this;
    }

    BasicProgram &add(Gate gate) { return add_parallel({std::move(gate)}); }

    std::size_t instruction_count() const {
        std::size_t n = 0;
        for (const auto &s : slots) n += s.instructions.size();
        return n;
    }

    void declare_registers(const BasicTimeSlot<Gate> &slot) {
        for (const auto &g : slot.instructions) {
            if (const auto *m = std::get_if<Measure>(&g)) registers.emplace(m->reg, 1);
        }
    }

    static void check_slot(const BasicTimeSlot<Gate> &slot, std::size_t n_qubits) {
        std::set<QubitId> seen;
        for (const auto &g : slot.instructions) {
            auto qs = operand_qubits(g);
            if (qs.size() == 2 && qs[0] == qs[1]) {
                throw ValidationError("two-qubit gate with identical operands " + to_string(qs[0]));
            }
            for (QubitId q : qs) {
                if (q.index >= n_qubits) {
                    throw ValidationError(to_string(q) + " out of range for " + std::to_string(n_qubits) + "-qubit program");
                }
                if (!seen.insert(q).second) {
                    throw ValidationError(to_string(q) + " appears more than once in a timeslot");
                }
            }
        }
    }
};

using TimeSlot = BasicTimeSlot<Instruction>;
using QuantumProgram = BasicProgram<Instruction>;

/// Checks every structural invariant of a program (slot disjointness, qubit
/// bounds, declared measurement registers).
template <class Gate>
void validate(const BasicProgram<Gate> &program) {
    for (const auto &slot : program.slots) {
        BasicProgram<Gate>::check_slot(slot, program.n_qubits);
        for (const auto &g : slot.instructions) {
            if (const auto *m = std::get_if<Measure>(&g)) {
                if (!program.registers.contains(m->reg)) {
                    throw ValidationError("measure targets undeclared register '" + m->reg + "'");
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Matrix semantics.

inline Matrix rxy_matrix(const RotationKey &key) {
    const double c = std::cos(key.gamma() / 2.0);
    const double s = std::sin(key.gamma() / 2.0);
    Matrix m(2, 2);
    m << c, -kI * std::exp(-kI * key.phi()) * s, -kI * std::exp(kI * key.phi()) * s, c;
    return m;
}

inline Matrix cz_matrix() {
    Matrix m = identity(4);
    m(3, 3) = -1.0;
    return m;
}

inline Matrix full_matrix(const Rxy &g, std::size_t n_qubits) {
    return embed_single(rxy_matrix(g.key), g.qubit.index, n_qubits);
}

inline Matrix full_matrix(const CZ &g, std::size_t n_qubits) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    Matrix m = identity(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (bit_of(i, g.a.index) && bit_of(i, g.b.index)) m(i, i) = -1.0;
    }
    return m;
}

inline Matrix full_matrix(const Measure &, std::size_t) { throw NonUnitarySlot("measure has no unitary"); }
inline Matrix full_matrix(const Reset &, std::size_t) { throw NonUnitarySlot("reset has no unitary"); }

/// Unitary of one parallel slot on the full 2^n space.
template <class Gate>
Matrix slot_unitary(const BasicTimeSlot<Gate> &slot, std::size_t n_qubits) {
    Matrix u = identity(std::size_t{1} << n_qubits);
    for (const auto &g : slot.instructions) {
        if (is_non_unitary(g)) {
            throw NonUnitarySlot("slot contains a measure or reset");
        }
        u = std::visit([&](const auto &op) { return full_matrix(op, n_qubits); }, g) * u;
    }
    return u;
}

/// Ordered product of slot unitaries over [begin, end); the earliest slot is
/// the rightmost factor.
template <class Gate>
Matrix program_segment_unitary(const BasicProgram<Gate> &program, std::size_t begin, std::size_t end) {
    if (begin > end || end > program.slots.size()) {
        throw OutOfRange("slot range [" + std::to_string(begin) + ", " + std::to_string(end) + ") out of bounds");
    }
    Matrix u = identity(std::size_t{1} << program.n_qubits);
    for (std::size_t i = begin; i < end; ++i) {
        u = slot_unitary(program.slots[i], program.n_qubits) * u;
    }
    return u;
}

template <class Gate>
Matrix program_unitary(const BasicProgram<Gate> &program) {
    return program_segment_unitary(program, 0, program.slots.size());
}

template <class Gate>
bool is_unitary_only(const BasicProgram<Gate> &program) {
    for (const auto &s : program.slots) {
        for (const auto &g : s.instructions) {
            if (is_non_unitary(g)) return false;
        }
    }
    return true;
}

/// Distinct rotation keys used by the Rxy instructions of a program.
inline RotationSet rotation_keys(const QuantumProgram &program) {
    RotationSet keys;
    for (const auto &s : program.slots) {
        for (const auto &g : s.instructions) {
            if (const auto *r = std::get_if<Rxy>(&g)) keys.insert(r->key);
        }
    }
    return keys;
}

}  // namespace rxyisa

#endif  // RXYISA_ISA_HPP
