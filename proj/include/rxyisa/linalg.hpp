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

#ifndef RXYISA_LINALG_HPP
#define RXYISA_LINALG_HPP

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

namespace rxyisa {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline Matrix identity(std::size_t dim) {
    return Matrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

/// Embeds a 2x2 operator acting on `qubit` into an n-qubit space. Qubit 0 is
/// the least significant bit of the basis-state index.
inline Matrix embed_single(const Matrix &op, std::size_t qubit, std::size_t n_qubits) {
    Matrix high = identity(std::size_t{1} << (n_qubits - qubit - 1));
    Matrix low = identity(std::size_t{1} << qubit);
    return kron(high, kron(op, low));
}

namespace pauli {
inline Matrix x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline Matrix y() {
    Matrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}
inline Matrix z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
}  // namespace pauli

inline Matrix projector(int bit) {
    Matrix m = Matrix::Zero(2, 2);
    m(bit, bit) = 1.0;
    return m;
}

inline double max_abs(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double unitarity_error(const Matrix &u) {
    return max_abs(u.adjoint() * u - identity(static_cast<std::size_t>(u.rows())));
}

inline double hermiticity_error(const Matrix &m) { return max_abs(m - m.adjoint()); }

inline bool bit_of(std::size_t index, std::size_t qubit) { return ((index >> qubit) & 1U) != 0; }

}  // namespace rxyisa

#endif  // RXYISA_LINALG_HPP
