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

#include <gtest/gtest.h>

#include "rxyisa/assembly.hpp"
#include "rxyisa/compiler.hpp"
#include "rxyisa/simulator.hpp"
#include "rxyisa/workload.hpp"
#include "test_util.hpp"

using namespace rxyisa;
using namespace rxyisa::testing;

namespace {

const QubitId q0{0}, q1{1}, q2{2};

/// cNOT matrix built from basis-state permutation, independent of the library.
Matrix cnot_oracle(std::size_t target, std::size_t control, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    Matrix m = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const std::size_t j = ((i >> control) & 1U) ? (i ^ (std::size_t{1} << target)) : i;
        m(j, i) = 1.0;
    }
    return m;
}

/// Controlled-Rx as |0><0| (x) I + |1><1| (x) Rx on the rotated qubit.
Matrix crx_oracle(double alpha, std::size_t rotated, std::size_t conditioning, std::size_t n) {
    const Matrix rx = rx_matrix(alpha);
    const std::size_t dim = std::size_t{1} << n;
    Matrix m = Matrix::Zero(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        if (!bit_of(i, conditioning)) {
            m(i, i) = 1.0;
            continue;
        }
        const std::size_t b = bit_of(i, rotated);
        for (std::size_t a = 0; a < 2; ++a) {
            const std::size_t j = (i & ~(std::size_t{1} << rotated)) | (a << rotated);
            m(j, i) = rx(a, b);
        }
    }
    return m;
}

TEST(DecomposeCnot, MatchesPermutationOracle) {
    const Matrix u = sequence_unitary(decompose_cnot(q1, q0), 2);
    EXPECT_LT(equivalence_check(u, cnot_oracle(1, 0, 2)).phase_invariant_distance, 1e-10);
    EXPECT_LT(dist(u, cnot_oracle(1, 0, 2)), 1e-12);
}

TEST(DecomposeCnot, ShapeIsTwoRotationsAroundOneCz) {
    const auto seq = decompose_cnot(q1, q0);
    ASSERT_EQ(seq.size(), 3u);
    EXPECT_EQ(std::get<Rxy>(seq[0]).key, RotationKey(0.5 * kPi, -0.5 * kPi));
    EXPECT_TRUE(std::holds_alternative<CZ>(seq[1]));
    EXPECT_EQ(std::get<Rxy>(seq[2]).key, RotationKey(0.5 * kPi, 0.5 * kPi));
    EXPECT_EQ(std::get<Rxy>(seq[0]).qubit, q1);
}

TEST(DecomposeCnot, LeavesZeroZeroInvariant) {
    const Matrix u = sequence_unitary(decompose_cnot(q1, q0), 2);
    EXPECT_NEAR(std::abs(u(0, 0)), 1.0, 1e-12);
}

TEST(DecomposeCnot, SameQubitThrows) { EXPECT_THROW(decompose_cnot(q0, q0), SameQubit); }

TEST(DecomposeCnot, RandomOperandsOnThreeQubits) {
    Rng rng(21);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t t = rng.below(3);
        std::size_t c = rng.below(2);
        if (c >= t) ++c;
        const Matrix u = sequence_unitary(decompose_cnot(QubitId{t}, QubitId{c}), 3);
        ASSERT_LT(equivalence_check(u, cnot_oracle(t, c, 3)).phase_invariant_distance, 1e-10);
    }
}

TEST(DecomposeCrx, ZeroAngleIsIdentity) {
    EXPECT_LT(equivalence_check(sequence_unitary(decompose_crx(0.0, q0, q1), 2), identity(4)).phase_invariant_distance,
              1e-10);
}

TEST(DecomposeCrx, StepAngleGivesMinusPlusPointZeroEight) {
    const auto seq = decompose_crx(0.16 * kPi, q0, q1);
    ASSERT_EQ(seq.size(), 4u);
    EXPECT_TRUE(std::holds_alternative<CZ>(seq[0]));
    EXPECT_EQ(std::get<Rxy>(seq[1]).key, RotationKey(0, -0.08 * kPi));
    EXPECT_TRUE(std::holds_alternative<CZ>(seq[2]));
    EXPECT_EQ(std::get<Rxy>(seq[3]).key, RotationKey(0, 0.08 * kPi));
    EXPECT_EQ(std::get<Rxy>(seq[1]).qubit, q0);
    EXPECT_EQ(std::get<Rxy>(seq[3]).qubit, q0);
}

TEST(DecomposeCrx, BlockStructure) {
    Rng rng(22);
    for (int i = 0; i < 50; ++i) {
        const double alpha = random_angle(rng);
        const Matrix u = sequence_unitary(decompose_crx(alpha, q0, q1), 2);
        // Conditioning qubit q1 is the high bit: indices 0,1 have it in |0>, 2,3 in |1>.
        EXPECT_LT(dist(u.block(0, 0, 2, 2), identity(2)), 1e-12);
        EXPECT_LT(dist(u.block(2, 2, 2, 2), rx_matrix(alpha)), 1e-12);
        EXPECT_LT(u.block(0, 2, 2, 2).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(DecomposeCrx, RandomAnglesAndOperands) {
    Rng rng(23);
    for (int i = 0; i < 1000; ++i) {
        const double alpha = random_angle(rng);
        const std::size_t r = rng.below(3);
        std::size_t c = rng.below(2);
        if (c >= r) ++c;
        const Matrix u = sequence_unitary(decompose_crx(alpha, QubitId{r}, QubitId{c}), 3);
        ASSERT_LT(equivalence_check(u, crx_oracle(alpha, r, c, 3)).phase_invariant_distance, 1e-10);
    }
}

TEST(DecomposeCrx, SameQubitThrows) { EXPECT_THROW(decompose_crx(1.0, q1, q1), SameQubit); }

TEST(DecomposeRz, StepAngleGivesMinusPointFourSix) {
    const auto seq = decompose_rz(0.08 * kPi, q1);
    ASSERT_EQ(seq.size(), 2u);
    EXPECT_EQ(std::get<Rxy>(seq[0]).key, RotationKey(0.5 * kPi, kPi));
    EXPECT_EQ(std::get<Rxy>(seq[1]).key, RotationKey(-0.46 * kPi, kPi));
}

TEST(DecomposeRz, ZeroAndPi) {
    EXPECT_LT(equivalence_check(sequence_unitary(decompose_rz(0.0, q0), 1), identity(2)).phase_invariant_distance,
              1e-10);
    const auto seq = decompose_rz(kPi, q0);
    EXPECT_EQ(std::get<Rxy>(seq[1]).key, RotationKey(0, kPi));
    EXPECT_LT(equivalence_check(sequence_unitary(seq, 1), rz_matrix(kPi)).phase_invariant_distance, 1e-10);
}

TEST(DecomposeRz, RandomAngles) {
    Rng rng(24);
    for (int i = 0; i < 1000; ++i) {
        const double beta = random_angle(rng);
        const Matrix u = sequence_unitary(decompose_rz(beta, q0), 1);
        ASSERT_LT(equivalence_check(u, rz_matrix(beta)).phase_invariant_distance, 1e-10);
    }
}

TEST(EquivalenceCheck, Examples) {
    Rng rng(25);
    const Matrix u = program_unitary(random_native_program(rng, 2, 10));
    EXPECT_LT(equivalence_check(u, u).phase_invariant_distance, 1e-14);
    EXPECT_LT(equivalence_check(u, std::exp(Complex(0, 1.234)) * u).phase_invariant_distance, 1e-14);
    const auto r = equivalence_check(identity(2), pauli::x());
    EXPECT_NEAR(r.phase_invariant_distance, 1.0, 1e-15);
    EXPECT_FALSE(r.equivalent);
    EXPECT_THROW(equivalence_check(identity(2), identity(4)), DimensionMismatch);
}

TEST(EquivalenceCheck, AgreesWithIndependentFormula) {
    Rng rng(26);
    for (int i = 0; i < 50; ++i) {
        const Matrix u = program_unitary(random_native_program(rng, 2, 6));
        const Matrix v = program_unitary(random_native_program(rng, 2, 6));
        EXPECT_NEAR(equivalence_check(u, v).phase_invariant_distance, phase_distance(u, v), 1e-12);
    }
}

SourceGate random_source_gate(Rng &rng, std::size_t n, bool axis_rxy_only) {
    const QubitId a{static_cast<std::size_t>(rng.below(n))};
    QubitId b{static_cast<std::size_t>(rng.below(n - 1))};
    if (b.index >= a.index) ++b.index;
    const double angle = random_angle(rng);
    switch (rng.below(8)) {
        case 0: return Rx{a, angle};
        case 1: return Ry{a, angle};
        case 2: return Rz{a, angle};
        case 3: {
            const double phi = axis_rxy_only ? 0.5 * kPi * static_cast<double>(rng.below(4)) : random_angle(rng);
            return Rxy{a, RotationKey(phi, angle)};
        }
        case 4: return Cnot{a, b};
        case 5: return Crx{a, b, angle};
        case 6: return CZ{a, b};
        default: return Rz{b, angle};
    }
}

SourceProgram random_source_program(Rng &rng, std::size_t n, std::size_t n_gates, bool axis_rxy_only) {
    SourceProgram p;
    p.n_qubits = n;
    for (std::size_t i = 0; i < n_gates; ++i) p.add(random_source_gate(rng, n, axis_rxy_only));
    return p;
}

TEST(Lower, NativeProgramUnchanged) {
    Rng rng(27);
    const QuantumProgram native = random_native_program(rng, 2, 15);
    SourceProgram src;
    src.n_qubits = 2;
    for (const auto &slot : native.slots) src.add(assembly_detail::widen(slot.instructions[0]));
    EXPECT_EQ(lower(src), native);
}

TEST(Lower, SingleCnot) {
    const auto p = lower(parse_source_program("cnot q1, q0"));
    ASSERT_EQ(p.instruction_count(), 3u);
    EXPECT_LT(equivalence_check(program_unitary(p), cnot_oracle(1, 0, 2)).phase_invariant_distance, 1e-10);
}

TEST(Lower, ParallelSlotExpansionsInterleave) {
    const auto p = lower(parse_source_program("qubits 2\n{ rz q0, 0.3 | rx q1, 0.2 }\n"));
    ASSERT_EQ(p.slots.size(), 2u);
    EXPECT_EQ(p.slots[0].instructions.size(), 2u);
    EXPECT_EQ(p.slots[1].instructions.size(), 1u);
}

TEST(Lower, PreservesRandomProgramUnitaries) {
    Rng rng(28);
    for (int i = 0; i < 200; ++i) {
        const auto src = random_source_program(rng, 2, 1 + rng.below(20), false);
        const auto r = equivalence_check(program_unitary(src), program_unitary(lower(src)), kCircuitTolerance);
        ASSERT_TRUE(r.equivalent) << r.phase_invariant_distance;
    }
}

TEST(Schedule, MergesAdjacentDisjointRotations) {
    const auto p = schedule(parse_program("rxy q0, 0, 0.5\nrxy q1, 0, 0.5\n"));
    ASSERT_EQ(p.slots.size(), 1u);
    EXPECT_EQ(p.slots[0].instructions.size(), 2u);
}

TEST(Schedule, CzIsABarrier) {
    const auto p = schedule(parse_program("rxy q0, 0, 0.5\ncz q0, q1\nrxy q1, 0, 0.5\n"));
    EXPECT_EQ(p.slots.size(), 3u);
}

TEST(Schedule, SameQubitNeverMerged) {
    const auto p = schedule(parse_program("rxy q0, 0, 0.5\nrxy q0, 0.5, 0.5\n"));
    EXPECT_EQ(p.slots.size(), 2u);
}

TEST(Schedule, PreservesUnitaryAndNeverGrows) {
    Rng rng(29);
    for (int i = 0; i < 200; ++i) {
        const auto p = random_native_program(rng, 3, 1 + rng.below(25));
        const auto s = schedule(p);
        ASSERT_LE(s.slots.size(), p.slots.size());
        ASSERT_EQ(s.instruction_count(), p.instruction_count());
        ASSERT_LT(dist(program_unitary(s), program_unitary(p)), 1e-12);
    }
}

TEST(Schedule, PreservesSegmentsAroundMeasurement) {
    const auto p = parse_program("qubits 2\nrxy q0, 0, 0.3\nrxy q1, 0, 0.4\nmeasure q0 -> m\nrxy q1, 0.5, 0.2\nrxy q0, 0, 1\n");
    const auto s = schedule(p);
    ASSERT_EQ(s.slots.size(), 3u);
    EXPECT_TRUE(std::holds_alternative<Measure>(s.slots[1].instructions[0]));
    EXPECT_LT(dist(program_segment_unitary(s, 0, 1), program_segment_unitary(p, 0, 2)), 1e-12);
    EXPECT_LT(dist(program_segment_unitary(s, 2, 3), program_segment_unitary(p, 3, 5)), 1e-12);
    EXPECT_EQ(s.registers, p.registers);
}

MeasurementRecord ideal(const SourceProgram &p) { return run_ideal(lower(p)); }

TEST(FrameRotate, RzBecomesRyOnSourceCircuit) {
    DisorderRealization r;
    r.w = 25;
    r.h0x = 0.1;
    r.h0y = -0.3;
    r.h1x = 0.5;
    r.h1y = 0.7;
    const auto rotated = frame_rotate_z_to_y(build_source_circuit(r, 1));
    EXPECT_EQ(rotated.frame, Frame::kY);
    bool found = false;
    for (const auto &slot : rotated.slots) {
        for (const auto &g : slot.instructions) {
            if (const auto *ry = std::get_if<Ry>(&g); ry && ry->qubit == q0) {
                found = found || angles_equal(ry->angle, 2.0 * r.w * r.h0y * r.tau);
            }
            EXPECT_FALSE(std::holds_alternative<Rz>(g) && std::get<Rz>(g).qubit == q0 &&
                         angles_equal(std::get<Rz>(g).angle, 2.0 * r.w * r.h0y * r.tau));
        }
    }
    EXPECT_TRUE(found);
}

TEST(FrameRotate, IdentityProgramKeepsStatistics) {
    const auto src = parse_source_program("qubits 2\n{ measure q0 -> a | measure q1 -> b }\n");
    const auto rotated = frame_rotate_z_to_y(src);
    const auto before = ideal(src), after = ideal(rotated);
    EXPECT_NEAR(before.p1("a"), after.p1("a"), 1e-12);
    EXPECT_NEAR(before.p1("b"), after.p1("b"), 1e-12);
}

TEST(FrameRotate, ConjugatesUnitaryPrograms) {
    // For a program with no measurement the rotated program is V^dagger U' V
    // with U' = V U V^dagger, so the overall unitary is unchanged.
    Rng rng(30);
    for (int i = 0; i < 200; ++i) {
        const auto src = random_source_program(rng, 2, 1 + rng.below(20), true);
        const auto rotated = frame_rotate_z_to_y(src);
        ASSERT_TRUE(equivalence_check(program_unitary(src), program_unitary(rotated), kCircuitTolerance).equivalent);
    }
}

TEST(FrameRotate, WorkloadShapedProgramsKeepMeasuredDistributions) {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        SourceProgram src;
        src.n_qubits = 2;
        src.add_parallel({Reset{q0}, Reset{q1}});
        if (rng.uniform01() < 0.5) src.add(Rx{q0, kPi});
        const std::size_t n = rng.below(20);
        for (std::size_t g = 0; g < n; ++g) src.add(random_source_gate(rng, 2, true));
        src.add_parallel({Measure{q0, "a"}, Measure{q1, "b"}});
        const auto before = ideal(src), after = ideal(frame_rotate_z_to_y(src));
        ASSERT_NEAR(before.p1("a"), after.p1("a"), 1e-9);
        ASSERT_NEAR(before.p1("b"), after.p1("b"), 1e-9);
    }
}

TEST(FrameRotate, MidCircuitMeasureAndResetRoundTrip) {
    const auto src = parse_source_program(
        "qubits 2\nrz q0, 0.3\nrx q0, 0.4\nmeasure q0 -> m\nreset q0\nrz q0, 0.2\nry q0, 0.7\ncnot q1, q0\n"
        "{ measure q0 -> a | measure q1 -> b }\n");
    NoiseParams off = NoiseParams::noiseless(2);
    const auto before = run_noisy(lower(src), off, {});
    const auto after = run_noisy(lower(frame_rotate_z_to_y(src)), off, {});
    EXPECT_NEAR(before.p1("a"), after.p1("a"), 1e-9);
    EXPECT_NEAR(before.p1("b"), after.p1("b"), 1e-9);
}

TEST(FrameRotate, RejectsOffAxisRxyAndSecondApplication) {
    EXPECT_THROW(frame_rotate_z_to_y(parse_source_program("rxy q0, 0.25, 1")), UnsupportedGate);
    const auto once = frame_rotate_z_to_y(parse_source_program("rz q0, 0.25"));
    EXPECT_THROW(frame_rotate_z_to_y(once), ValidationError);
}

TEST(RunPasses, OrderAndNames) {
    const auto src = parse_source_program("cnot q1, q0");
    EXPECT_THROW(run_passes(src, {"optimize"}), ConfigError);
    EXPECT_THROW(run_passes(src, {"schedule"}), ConfigError);
    EXPECT_THROW(run_passes(src, {"lower", "frame-rotate"}), ConfigError);
    const auto out = run_passes(src, {"frame-rotate", "lower", "schedule"});
    ASSERT_TRUE(std::holds_alternative<QuantumProgram>(out));
    EXPECT_TRUE(equivalence_check(program_unitary(src), program_unitary(std::get<QuantumProgram>(out))).equivalent);
    EXPECT_TRUE(std::holds_alternative<SourceProgram>(run_passes(src, {})));
}

TEST(PipelineEquivalence, SourceCircuitCompilesToNativeStatistics) {
    Rng master(32);
    for (int i = 0; i < 50; ++i) {
        Rng rng = master.child({static_cast<std::uint64_t>(i)});
        const auto r = sample_disorder(rng.uniform(0.0, 30.0), 0.04 * kPi, 3, rng);
        for (std::size_t k = 0; k <= 3; ++k) {
            const auto compiled = std::get<QuantumProgram>(
                run_passes(build_source_circuit(r, k), {"frame-rotate", "lower", "schedule"}));
            const auto a = run_ideal(compiled), b = run_ideal(build_native_circuit(r, k));
            ASSERT_NEAR(a.p1(kQ0Register), b.p1(kQ0Register), 1e-9);
            ASSERT_NEAR(a.p1(kQ1Register), b.p1(kQ1Register), 1e-9);
        }
    }
}

}  // namespace
