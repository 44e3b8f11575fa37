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

#ifndef RXYISA_SIMULATOR_HPP
#define RXYISA_SIMULATOR_HPP

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rxyisa/errors.hpp"
#include "rxyisa/isa.hpp"
#include "rxyisa/linalg.hpp"
#include "rxyisa/rng.hpp"

namespace rxyisa {

// ---------------------------------------------------------------------------
// States.

class StateVector {
   public:
    explicit StateVector(std::size_t n_qubits) : n_qubits_(n_qubits), amps_(Vector::Zero(std::size_t{1} << n_qubits)) {
        amps_(0) = 1.0;
    }
    StateVector(std::size_t n_qubits, Vector amplitudes) : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
        if (amps_.size() != static_cast<Eigen::Index>(std::size_t{1} << n_qubits)) {
            throw DimensionMismatch("state vector length does not match qubit count");
        }
        if (std::abs(amps_.squaredNorm() - 1.0) > 1e-10) {
            throw NotNormalized("state vector is not normalized");
        }
    }

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    const Vector &amplitudes() const noexcept { return amps_; }
    double norm() const { return amps_.norm(); }

    void apply(const Matrix &u) { amps_ = u * amps_; }

    double probability_one(QubitId q) const {
        double p = 0.0;
        for (Eigen::Index i = 0; i < amps_.size(); ++i) {
            if (bit_of(static_cast<std::size_t>(i), q.index)) p += std::norm(amps_(i));
        }
        return p;
    }

    /// Keeps the component with qubit q equal to `bit` and renormalizes.
    void project(QubitId q, int bit) {
        double p = 0.0;
        for (Eigen::Index i = 0; i < amps_.size(); ++i) {
            if (static_cast<int>(bit_of(static_cast<std::size_t>(i), q.index)) != bit) {
                amps_(i) = 0.0;
            } else {
                p += std::norm(amps_(i));
            }
        }
        if (p < 1e-12) {
            throw InvalidProgram("projection of " + to_string(q) + " onto |" + std::to_string(bit) +
                                 "> has vanishing probability");
        }
        amps_ /= std::sqrt(p);
    }

   private:
    std::size_t n_qubits_;
    Vector amps_;
};

class DensityMatrix {
   public:
    explicit DensityMatrix(std::size_t n_qubits)
        : n_qubits_(n_qubits), rho_(Matrix::Zero(std::size_t{1} << n_qubits, std::size_t{1} << n_qubits)) {
        rho_(0, 0) = 1.0;
    }

    std::size_t n_qubits() const noexcept { return n_qubits_; }
    const Matrix &matrix() const noexcept { return rho_; }

    void apply(const Matrix &u) { rho_ = u * rho_ * u.adjoint(); }

    /// Applies a single-qubit channel given by its Kraus operators.
    void apply_channel(const std::vector<Matrix> &kraus, QubitId q) {
        Matrix out = Matrix::Zero(rho_.rows(), rho_.cols());
        for (const auto &k : kraus) {
            Matrix full = embed_single(k, q.index, n_qubits_);
            out += full * rho_ * full.adjoint();
        }
        rho_ = std::move(out);
    }

    double probability_one(QubitId q) const {
        double p = 0.0;
        for (Eigen::Index i = 0; i < rho_.rows(); ++i) {
            if (bit_of(static_cast<std::size_t>(i), q.index)) p += rho_(i, i).real();
        }
        return p;
    }

    void project(QubitId q, int bit) {
        Matrix p = embed_single(projector(bit), q.index, n_qubits_);
        rho_ = p * rho_ * p;
        const double tr = rho_.trace().real();
        if (tr < 1e-12) {
            throw InvalidProgram("projection of " + to_string(q) + " has vanishing probability");
        }
        rho_ /= tr;
    }

    double trace_error() const { return std::abs(rho_.trace() - Complex(1.0)); }
    double hermiticity_error() const { return rxyisa::hermiticity_error(rho_); }
    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho_ + rho_.adjoint()), Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

   private:
    std::size_t n_qubits_;
    Matrix rho_;
};

// ---------------------------------------------------------------------------
// Noise.

/// Per-qubit relaxation (T1) and coherence (T2) times plus instruction
/// durations, all in seconds. Infinite times disable the channel.
struct NoiseParams {
    std::vector<double> t1;
    std::vector<double> t2;
    double single_qubit_gate_duration = 20e-9;
    double cz_duration = 40e-9;
    double measure_duration = 0.0;
    double reset_duration = 0.0;

    /// Two-qubit device values: T1 = 28 / 22 us, echo T2 = 4.2 / 38 us.
    static NoiseParams device_defaults() {
        NoiseParams p;
        p.t1 = {28e-6, 22e-6};
        p.t2 = {4.2e-6, 38e-6};
        return p;
    }

    static NoiseParams noiseless(std::size_t n_qubits) {
        NoiseParams p;
        p.t1.assign(n_qubits, std::numeric_limits<double>::infinity());
        p.t2.assign(n_qubits, std::numeric_limits<double>::infinity());
        return p;
    }

    void validate(std::size_t n_qubits) const {
        if (t1.size() < n_qubits || t2.size() < n_qubits) {
            throw InvalidNoise("noise parameters cover " + std::to_string(std::min(t1.size(), t2.size())) +
                               " qubits, program has " + std::to_string(n_qubits));
        }
        for (std::size_t q = 0; q < n_qubits; ++q) {
            if (!(t1[q] > 0.0) || !(t2[q] > 0.0)) {
                throw InvalidNoise("T1 and T2 must be positive");
            }
            if (t2[q] > 2.0 * t1[q]) {
                throw InvalidNoise("T2 > 2*T1 on q" + std::to_string(q));
            }
        }
        if (!(single_qubit_gate_duration > 0.0) || !(cz_duration > 0.0) || measure_duration < 0.0 ||
            reset_duration < 0.0) {
            throw InvalidNoise("gate durations must be positive");
        }
    }

    double amplitude_damping_probability(std::size_t q, double d) const { return 1.0 - std::exp(-d / t1[q]); }

    /// Phase-flip probability for pure dephasing at rate 1/T2 - 1/(2 T1).
    double phase_flip_probability(std::size_t q, double d) const {
        const double rate = 1.0 / t2[q] - 1.0 / (2.0 * t1[q]);
        return 0.5 * (1.0 - std::exp(-d * std::max(rate, 0.0)));
    }

    template <class Gate>
    double slot_duration(const BasicTimeSlot<Gate> &slot) const {
        double d = 0.0;
        for (const auto &g : slot.instructions) {
            double gd = std::visit(overloaded{
                                       [&](const CZ &) { return cz_duration; },
                                       [&](const Measure &) { return measure_duration; },
                                       [&](const Reset &) { return reset_duration; },
                                       [&](const auto &) { return single_qubit_gate_duration; },
                                   },
                                   g);
            d = std::max(d, gd);
        }
        return d;
    }
};

inline std::vector<Matrix> amplitude_damping_kraus(double p) {
    Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - p);
    k1(0, 1) = std::sqrt(p);
    return {k0, k1};
}

inline std::vector<Matrix> phase_flip_kraus(double f) {
    return {std::sqrt(1.0 - f) * identity(2), std::sqrt(f) * pauli::z()};
}

inline std::vector<Matrix> reset_kraus() {
    Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k1(0, 1) = 1.0;
    return {k0, k1};
}

/// Lets every qubit decohere for duration d.
inline void apply_idle(DensityMatrix &rho, const NoiseParams &noise, double d) {
    if (d <= 0.0) return;
    for (std::size_t q = 0; q < rho.n_qubits(); ++q) {
        const double p = noise.amplitude_damping_probability(q, d);
        const double f = noise.phase_flip_probability(q, d);
        if (p > 0.0) rho.apply_channel(amplitude_damping_kraus(p), QubitId{q});
        if (f > 0.0) rho.apply_channel(phase_flip_kraus(f), QubitId{q});
    }
}

// ---------------------------------------------------------------------------
// Measurement records.

enum class MeasurementMode { kExact, kSampled };

struct MeasurementSpec {
    MeasurementMode mode = MeasurementMode::kExact;
    std::size_t n_avg = 1000;
    std::uint64_t seed = 0;
};

/// Per-register results. In exact mode `probability` holds P(|1>) at the time
/// of the (last) measurement. In sampled mode `bits` holds one bit per shot and
/// `probability` the observed frequency.
struct MeasurementRecord {
    MeasurementMode mode = MeasurementMode::kExact;
    std::size_t n_avg = 0;
    std::uint64_t seed = 0;
    std::map<std::string, double> probability;
    std::map<std::string, std::vector<std::uint8_t>> bits;

    double p1(const std::string &reg) const {
        auto it = probability.find(reg);
        if (it == probability.end()) throw ValidationError("register '" + reg + "' was not measured");
        return it->second;
    }
};

namespace sim_detail {

struct CompiledSlot {
    std::optional<Matrix> unitary;
    std::vector<Instruction> non_unitary;
    double duration = 0.0;
};

inline std::vector<CompiledSlot> compile_slots(const QuantumProgram &program, const NoiseParams *noise) {
    std::vector<CompiledSlot> out;
    out.reserve(program.slots.size());
    for (const auto &slot : program.slots) {
        CompiledSlot cs;
        TimeSlot unitary_part;
        for (const auto &g : slot.instructions) {
            (is_non_unitary(g) ? cs.non_unitary : unitary_part.instructions).push_back(g);
        }
        if (!unitary_part.instructions.empty()) cs.unitary = slot_unitary(unitary_part, program.n_qubits);
        if (noise) cs.duration = noise->slot_duration(slot);
        out.push_back(std::move(cs));
    }
    return out;
}

inline void check_program(const QuantumProgram &program) {
    try {
        validate(program);
    } catch (const ValidationError &e) {
        throw InvalidProgram(e.what());
    }
    if (program.n_qubits > 12) throw InvalidProgram("simulator supports at most 12 qubits");
}

}  // namespace sim_detail

/// Ideal state-vector execution from |0...0>.
///
/// Exact mode records P(|1>) for each measurement without collapse, so a
/// measured qubit may not be used again. Sampled mode runs n_avg shots with
/// projective collapse.
inline MeasurementRecord run_ideal(const QuantumProgram &program, const MeasurementSpec &spec = {}) {
    using namespace sim_detail;
    check_program(program);
    const auto slots = compile_slots(program, nullptr);
    MeasurementRecord record;
    record.mode = spec.mode;

    if (spec.mode == MeasurementMode::kExact) {
        StateVector psi(program.n_qubits);
        std::vector<bool> measured(program.n_qubits, false);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            for (const auto &g : program.slots[s].instructions) {
                for (QubitId q : operand_qubits(g)) {
                    if (measured[q.index] && !std::holds_alternative<Measure>(g)) {
                        throw InvalidProgram("exact-mode measurement of " + to_string(q) + " must be terminal");
                    }
                }
            }
            if (slots[s].unitary) psi.apply(*slots[s].unitary);
            for (const auto &g : slots[s].non_unitary) {
                if (const auto *m = std::get_if<Measure>(&g)) {
                    record.probability[m->reg] = psi.probability_one(m->qubit);
                    measured[m->qubit.index] = true;
                } else {
                    psi.project(std::get<Reset>(g).qubit, 0);
                }
            }
        }
        return record;
    }

    record.n_avg = spec.n_avg;
    record.seed = spec.seed;
    Rng rng(spec.seed);
    for (const auto &[name, width] : program.registers) record.bits[name].assign(spec.n_avg, 0);
    for (std::size_t shot = 0; shot < spec.n_avg; ++shot) {
        StateVector psi(program.n_qubits);
        for (const auto &cs : slots) {
            if (cs.unitary) psi.apply(*cs.unitary);
            for (const auto &g : cs.non_unitary) {
                if (const auto *m = std::get_if<Measure>(&g)) {
                    const int bit = rng.uniform01() < psi.probability_one(m->qubit) ? 1 : 0;
                    psi.project(m->qubit, bit);
                    record.bits[m->reg][shot] = static_cast<std::uint8_t>(bit);
                } else {
                    psi.project(std::get<Reset>(g).qubit, 0);
                }
            }
        }
    }
    for (const auto &[name, bits] : record.bits) {
        double ones = 0.0;
        for (auto b : bits) ones += b;
        record.probability[name] = spec.n_avg ? ones / static_cast<double>(spec.n_avg) : 0.0;
    }
    return record;
}

/// Called after every slot (unitary, non-unitary instructions and noise applied).
using SlotObserver = std::function<void(std::size_t slot, const DensityMatrix &rho)>;

/// Density-matrix execution. After each slot every qubit undergoes amplitude
/// damping and pure dephasing for the slot's duration (idle qubits included).
inline MeasurementRecord run_noisy(const QuantumProgram &program, const NoiseParams &noise,
                                   const MeasurementSpec &spec = {}, const SlotObserver &observer = {}) {
    using namespace sim_detail;
    check_program(program);
    noise.validate(program.n_qubits);
    const auto slots = compile_slots(program, &noise);
    MeasurementRecord record;
    record.mode = spec.mode;

    auto run_once = [&](Rng *rng, std::size_t shot) {
        DensityMatrix rho(program.n_qubits);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            const auto &cs = slots[s];
            if (cs.unitary) rho.apply(*cs.unitary);
            for (const auto &g : cs.non_unitary) {
                if (const auto *m = std::get_if<Measure>(&g)) {
                    const double p1 = rho.probability_one(m->qubit);
                    if (rng) {
                        const int bit = rng->uniform01() < p1 ? 1 : 0;
                        rho.project(m->qubit, bit);
                        record.bits[m->reg][shot] = static_cast<std::uint8_t>(bit);
                    } else {
                        record.probability[m->reg] = p1;
                        rho.apply_channel({projector(0), projector(1)}, m->qubit);
                    }
                } else {
                    rho.apply_channel(reset_kraus(), std::get<Reset>(g).qubit);
                }
            }
            apply_idle(rho, noise, cs.duration);
            if (observer) observer(s, rho);
        }
    };

    if (spec.mode == MeasurementMode::kExact) {
        run_once(nullptr, 0);
        return record;
    }
    record.n_avg = spec.n_avg;
    record.seed = spec.seed;
    Rng rng(spec.seed);
    for (const auto &[name, width] : program.registers) record.bits[name].assign(spec.n_avg, 0);
    for (std::size_t shot = 0; shot < spec.n_avg; ++shot) run_once(&rng, shot);
    for (const auto &[name, bits] : record.bits) {
        double ones = 0.0;
        for (auto b : bits) ones += b;
        record.probability[name] = spec.n_avg ? ones / static_cast<double>(spec.n_avg) : 0.0;
    }
    return record;
}

// ---------------------------------------------------------------------------
// Hamiltonian and exact evolution.

/// Two-spin Heisenberg exchange plus disorder fields:
/// H = sigma_0 . sigma_1 + w (h0x X0 + h1x X1 + h0z Z0 + h1z Z1).
inline Matrix hamiltonian_matrix(double w, double h0x, double h0z, double h1x, double h1z) {
    Matrix h = kron(pauli::x(), pauli::x()) + kron(pauli::y(), pauli::y()) + kron(pauli::z(), pauli::z());
    h += w * (h0x * embed_single(pauli::x(), 0, 2) + h1x * embed_single(pauli::x(), 1, 2) +
              h0z * embed_single(pauli::z(), 0, 2) + h1z * embed_single(pauli::z(), 1, 2));
    return h;
}

/// exp(-i H t) through the eigendecomposition of H.
inline Matrix evolution_operator(const Matrix &h, double t) {
    if (h.rows() != h.cols()) throw DimensionMismatch("Hamiltonian must be square");
    if (hermiticity_error(h) > 1e-12 * std::max(1.0, max_abs(h))) {
        throw NotHermitian("Hamiltonian is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
    Vector phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::exp(-kI * es.eigenvalues()(i) * t);
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline StateVector exact_evolution(const Matrix &h, double t, const StateVector &initial) {
    if (h.rows() != initial.amplitudes().size()) throw DimensionMismatch("Hamiltonian and state dimensions differ");
    StateVector out = initial;
    out.apply(evolution_operator(h, t));
    return out;
}

// ---------------------------------------------------------------------------
// Bloch sphere.

struct BlochVector {
    double theta = 0.0;
    double phi = 0.0;
};

inline BlochVector bloch_angles(Complex a0, Complex a1) {
    if (std::abs(std::norm(a0) + std::norm(a1) - 1.0) > 1e-10) {
        throw NotNormalized("single-qubit state is not normalized");
    }
    BlochVector b;
    b.theta = 2.0 * std::acos(std::clamp(std::abs(a0), 0.0, 1.0));
    if (std::sin(b.theta / 2.0) < 1e-12) return b;
    double phi = std::arg(a1) - (std::abs(a0) > 0.0 ? std::arg(a0) : 0.0);
    phi = std::fmod(phi, 2.0 * kPi);
    if (phi < 0.0) phi += 2.0 * kPi;
    if (phi >= 2.0 * kPi - 1e-12) phi = 0.0;
    b.phi = phi;
    return b;
}

inline BlochVector bloch_angles(const StateVector &psi) {
    if (psi.n_qubits() != 1) throw DimensionMismatch("bloch_angles needs a single-qubit state");
    return bloch_angles(psi.amplitudes()(0), psi.amplitudes()(1));
}

/// Bloch-sphere path of |0> under Rxy(phi, gamma * s / n_steps), s = 0..n_steps.
inline std::vector<BlochVector> rotation_trajectory(const RotationKey &key, std::size_t n_steps = 20) {
    if (n_steps < 1) throw ValidationError("trajectory needs at least one step");
    std::vector<BlochVector> path;
    path.reserve(n_steps + 1);
    for (std::size_t s = 0; s <= n_steps; ++s) {
        Matrix u = rxy_matrix(RotationKey(key.phi(), key.gamma() * static_cast<double>(s) / static_cast<double>(n_steps)));
        path.push_back(bloch_angles(u(0, 0), u(1, 0)));
    }
    return path;
}

}  // namespace rxyisa

#endif  // RXYISA_SIMULATOR_HPP
