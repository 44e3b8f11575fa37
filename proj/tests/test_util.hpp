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

#ifndef RXYISA_TESTS_TEST_UTIL_HPP
#define RXYISA_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <string>
#include <vector>

#include "rxyisa/isa.hpp"
#include "rxyisa/linalg.hpp"
#include "rxyisa/rng.hpp"
#include "rxyisa/source.hpp"

namespace rxyisa::testing {

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

inline double dist(const Matrix &a, const Matrix &b) { return max_abs(a - b); }

/// sqrt(1 - |tr(U^dagger V)| / d), computed here independently of the library.
/// Accurate away from zero; near zero it is limited to about 1e-8 by rounding.
inline double phase_distance(const Matrix &u, const Matrix &v) {
    const double d = static_cast<double>(u.rows());
    const double t = std::abs((u.adjoint() * v).trace()) / d;
    return std::sqrt(std::max(0.0, 1.0 - t));
}

inline double random_angle(Rng &rng, double span = 4.0 * kPi) { return rng.uniform(-span, span); }

/// Random native program over `n` qubits with only unitary instructions.
inline QuantumProgram random_native_program(Rng &rng, std::size_t n, std::size_t n_gates) {
    QuantumProgram p;
    p.n_qubits = n;
    for (std::size_t i = 0; i < n_gates; ++i) {
        const QubitId a{static_cast<std::size_t>(rng.below(n))};
        if (n > 1 && rng.uniform01() < 0.3) {
            QubitId b{static_cast<std::size_t>(rng.below(n - 1))};
            if (b.index >= a.index) ++b.index;
            p.add(CZ{a, b});
        } else {
            p.add(Rxy{a, RotationKey(random_angle(rng), random_angle(rng))});
        }
    }
    return p;
}

inline std::string read_file(const std::filesystem::path &path) {
    std::FILE *f = std::fopen(path.c_str(), "rb");
    if (!f) return {};
    std::string s;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) s.append(buf, n);
    std::fclose(f);
    return s;
}

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

/// Runs a shell command, capturing stdout and stderr together.
inline CommandResult run_command(const std::string &cmd) {
    CommandResult r;
    std::FILE *pipe = popen((cmd + " 2>&1").c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

inline std::filesystem::path scratch_dir(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / ("rxyisa_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace rxyisa::testing

#endif  // RXYISA_TESTS_TEST_UTIL_HPP
