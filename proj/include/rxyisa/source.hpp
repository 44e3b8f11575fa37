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

#ifndef RXYISA_SOURCE_HPP
#define RXYISA_SOURCE_HPP

#include <cmath>
#include <cstddef>
#include <variant>
#include <vector>

#include "rxyisa/isa.hpp"
#include "rxyisa/linalg.hpp"

namespace rxyisa {

// Source-level gates accepted by the compiler. Angles are in radians and are
// not canonicalized; equality uses the same tolerance as RotationKey.

inline bool angles_equal(double a, double b) { return std::abs(a - b) < RotationKey::kTolerance; }

struct Rx {
    QubitId qubit;
    double angle = 0.0;
    bool operator==(const Rx &o) const { return qubit == o.qubit && angles_equal(angle, o.angle); }
};

struct Ry {
    QubitId qubit;
    double angle = 0.0;
    bool operator==(const Ry &o) const { return qubit == o.qubit && angles_equal(angle, o.angle); }
};

struct Rz {
    QubitId qubit;
    double angle = 0.0;
    bool operator==(const Rz &o) const { return qubit == o.qubit && angles_equal(angle, o.angle); }
};

/// Controlled-NOT flipping `target` when `control` is |1>. Written
/// `cnot q<target>, q<control>`.
struct Cnot {
    QubitId target;
    QubitId control;
    bool operator==(const Cnot &) const = default;
};

/// Controlled-Rx: Rx(angle) on `rotated` when `conditioning` is |1>. Written
/// `crx q<rotated>, q<conditioning>, <angle_over_pi>`.
struct Crx {
    QubitId rotated;
    QubitId conditioning;
    double angle = 0.0;
    bool operator==(const Crx &o) const {
        return rotated == o.rotated && conditioning == o.conditioning && angles_equal(angle, o.angle);
    }
};

using SourceGate = std::variant<Rx, Ry, Rz, Rxy, Cnot, Crx, CZ, Measure, Reset>;

inline std::vector<QubitId> operand_qubits(const Rx &g) { return {g.qubit}; }
inline std::vector<QubitId> operand_qubits(const Ry &g) { return {g.qubit}; }
inline std::vector<QubitId> operand_qubits(const Rz &g) { return {g.qubit}; }
inline std::vector<QubitId> operand_qubits(const Cnot &g) { return {g.target, g.control}; }
inline std::vector<QubitId> operand_qubits(const Crx &g) { return {g.rotated, g.conditioning}; }

enum class Frame { kZ, kY };

/// Source program. `frame` records whether the single-qubit basis has been
/// rotated so that z-axis fields are read as y-axis fields.
struct SourceProgram : BasicProgram<SourceGate> {
    Frame frame = Frame::kZ;
    bool operator==(const SourceProgram &) const = default;
};

// Reference matrices for the source vocabulary. These are written out
// directly rather than through Rxy.

inline Matrix rx_matrix(double angle) {
    const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
    Matrix m(2, 2);
    m << c, -kI * s, -kI * s, c;
    return m;
}

inline Matrix ry_matrix(double angle) {
    const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
    Matrix m(2, 2);
    m << c, -s, s, c;
    return m;
}

inline Matrix rz_matrix(double angle) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::exp(-kI * angle / 2.0);
    m(1, 1) = std::exp(kI * angle / 2.0);
    return m;
}

inline Matrix full_matrix(const Rx &g, std::size_t n) { return embed_single(rx_matrix(g.angle), g.qubit.index, n); }
inline Matrix full_matrix(const Ry &g, std::size_t n) { return embed_single(ry_matrix(g.angle), g.qubit.index, n); }
inline Matrix full_matrix(const Rz &g, std::size_t n) { return embed_single(rz_matrix(g.angle), g.qubit.index, n); }

inline Matrix full_matrix(const Cnot &g, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    Matrix m = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t j = bit_of(i, g.control.index) ? (i ^ (std::size_t{1} << g.target.index)) : i;
        m(j, i) = 1.0;
    }
    return m;
}

inline Matrix full_matrix(const Crx &g, std::size_t n) {
    return embed_single(projector(0), g.conditioning.index, n) +
           embed_single(projector(1), g.conditioning.index, n) * embed_single(rx_matrix(g.angle), g.rotated.index, n);
}

}  // namespace rxyisa

#endif  // RXYISA_SOURCE_HPP
