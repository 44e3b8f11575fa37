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

#ifndef RXYISA_WORKLOAD_HPP
#define RXYISA_WORKLOAD_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rxyisa/errors.hpp"
#include "rxyisa/format.hpp"
#include "rxyisa/isa.hpp"
#include "rxyisa/linalg.hpp"
#include "rxyisa/rng.hpp"
#include "rxyisa/simulator.hpp"
#include "rxyisa/source.hpp"
#include "rxyisa/wavemem.hpp"

namespace rxyisa {

/// One draw of the disorder fields for the two-spin model. The z-axis fields
/// of the Hamiltonian are carried as h0y / h1y because the circuits run in the
/// frame where z has been rotated onto y.
struct DisorderRealization {
    double w = 0.0;
    double tau = 0.04 * kPi;
    std::size_t n_steps = 10;
    double h0x = 0.0;
    double h0y = 0.0;
    double h1x = 0.0;
    double h1y = 0.0;
    std::uint64_t seed = 0;

    void validate() const {
        for (double h : {h0x, h0y, h1x, h1y}) {
            if (!(h >= -1.0 && h <= 1.0)) throw ValidationError("disorder field outside [-1, 1]");
        }
        if (!(tau > 0.0)) throw ValidationError("Trotter step tau must be positive");
    }
};

/// Four independent U(-1, 1) draws in the order h0x, h0y, h1x, h1y.
inline DisorderRealization sample_disorder(double w, double tau, std::size_t n_steps, Rng &rng) {
    DisorderRealization r;
    r.w = w;
    r.tau = tau;
    r.n_steps = n_steps;
    r.seed = rng.seed();
    r.h0x = rng.uniform(-1.0, 1.0);
    r.h0y = rng.uniform(-1.0, 1.0);
    r.h1x = rng.uniform(-1.0, 1.0);
    r.h1y = rng.uniform(-1.0, 1.0);
    return r;
}

inline constexpr QubitId kQ0{0};
inline constexpr QubitId kQ1{1};
inline const std::string kQ0Register = "q0mZ";
inline const std::string kQ1Register = "q1mZ";

namespace workload_detail {
inline void check_step(const DisorderRealization &r, std::size_t k) {
    r.validate();
    if (k > r.n_steps) {
        throw StepOutOfRange("Trotter step " + std::to_string(k) + " exceeds N = " + std::to_string(r.n_steps));
    }
}
inline Rxy rot(QubitId q, double phi, double gamma) { return Rxy{q, RotationKey(phi, gamma)}; }
}  // namespace workload_detail

/// Appends one Trotter interval in native instructions (10 rotations, 4 cZ).
inline void append_native_interval(QuantumProgram &p, const DisorderRealization &r) {
    using workload_detail::rot;
    const double half = 0.5 * kPi;
    const double a = 2.0 * r.tau;
    const double wt2 = 2.0 * r.w * r.tau;
    p.add_parallel({rot(kQ0, half, wt2 * r.h0y), rot(kQ1, half, -half)});
    p.add(CZ{kQ1, kQ0});
    p.add(rot(kQ1, half, -half));
    p.add(rot(kQ1, 0.5 * a - half, kPi));
    p.add(CZ{kQ0, kQ1});
    p.add(rot(kQ0, 0.0, -a));
    p.add(CZ{kQ0, kQ1});
    p.add_parallel({rot(kQ0, 0.0, a), rot(kQ1, half, -half)});
    p.add(CZ{kQ1, kQ0});
    p.add(rot(kQ1, half, half + wt2 * r.h1y));
    p.add_parallel({rot(kQ0, 0.0, wt2 * r.h0x), rot(kQ1, 0.0, wt2 * r.h1x)});
}

/// Native circuit for Trotter step k: prologue, k intervals, epilogue and
/// parallel measurement into q0mZ / q1mZ.
inline QuantumProgram build_native_circuit(const DisorderRealization &r, std::size_t k) {
    using workload_detail::rot;
    workload_detail::check_step(r, k);
    QuantumProgram p;
    p.n_qubits = 2;
    p.add_parallel({Reset{kQ0}, Reset{kQ1}});
    p.add_parallel({rot(kQ0, 0.0, 0.5 * kPi), rot(kQ1, 0.0, -0.5 * kPi)});
    for (std::size_t m = 0; m < k; ++m) append_native_interval(p, r);
    p.add_parallel({rot(kQ0, 0.0, 0.5 * kPi), rot(kQ1, 0.0, 0.5 * kPi)});
    p.add_parallel({Measure{kQ0, kQ0Register}, Measure{kQ1, kQ1Register}});
    return p;
}

/// Algorithm-level circuit for Trotter step k in the z frame, with the y-field
/// values of the realization placed in the z-field rotations.
inline SourceProgram build_source_circuit(const DisorderRealization &r, std::size_t k) {
    workload_detail::check_step(r, k);
    const double wt2 = 2.0 * r.w * r.tau;
    SourceProgram p;
    p.n_qubits = 2;
    p.add_parallel({Reset{kQ0}, Reset{kQ1}});
    p.add(Rx{kQ0, kPi});
    for (std::size_t m = 0; m < k; ++m) {
        p.add(Cnot{kQ1, kQ0});
        p.add_parallel({Rz{kQ0, wt2 * r.h0y}, Rz{kQ1, 2.0 * r.tau}});
        p.add(Crx{kQ0, kQ1, 4.0 * r.tau});
        p.add(Cnot{kQ1, kQ0});
        p.add(Rz{kQ1, wt2 * r.h1y});
        p.add_parallel({Rx{kQ0, wt2 * r.h0x}, Rx{kQ1, wt2 * r.h1x}});
    }
    p.add_parallel({Measure{kQ0, kQ0Register}, Measure{kQ1, kQ1Register}});
    return p;
}

/// Unitary of one native interval, conjugated from the y frame back to the z
/// frame so it approximates exp(-i H tau) with z fields h0y / h1y.
inline Matrix trotter_interval_unitary(const DisorderRealization &r) {
    QuantumProgram p;
    p.n_qubits = 2;
    append_native_interval(p, r);
    const Matrix frame = kron(rx_matrix(-0.5 * kPi), rx_matrix(-0.5 * kPi));
    return frame.adjoint() * program_unitary(p) * frame;
}

/// Imbalance P0 - P1, where Pj is the probability of qubit j in |1>.
inline double imbalance(double p0, double p1) {
    constexpr double slack = 1e-12;
    if (!(p0 >= -slack && p0 <= 1.0 + slack && p1 >= -slack && p1 <= 1.0 + slack)) {
        throw OutOfRange("probabilities must lie in [0, 1]");
    }
    return p0 - p1;
}

struct GateCensus {
    std::size_t single_qubit = 0;
    std::size_t two_qubit = 0;
    std::size_t measure = 0;
    std::size_t reset = 0;
    std::map<std::string, std::size_t> per_kind;
};

inline GateCensus gate_census(const QuantumProgram &program) {
    GateCensus c;
    for (const auto &slot : program.slots) {
        for (const auto &ins : slot.instructions) {
            std::visit(overloaded{
                           [&](const Rxy &) {
                               ++c.single_qubit;
                               ++c.per_kind["rxy"];
                           },
                           [&](const CZ &) {
                               ++c.two_qubit;
                               ++c.per_kind["cz"];
                           },
                           [&](const Measure &) {
                               ++c.measure;
                               ++c.per_kind["measure"];
                           },
                           [&](const Reset &) {
                               ++c.reset;
                               ++c.per_kind["reset"];
                           },
                       },
                       ins);
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// Experiment.

enum class Backend { kIdeal, kNoisy };

inline constexpr std::uint64_t kDefaultMasterSeed = 2020;

struct ExperimentConfig {
    std::vector<double> w_values = {1.0, 25.0};
    std::size_t n_realizations = 60;
    double tau = 0.04 * kPi;
    std::size_t n_steps = 10;
    std::uint64_t master_seed = kDefaultMasterSeed;
    Backend backend = Backend::kIdeal;
    NoiseParams noise = NoiseParams::device_defaults();
    MeasurementMode measurement = MeasurementMode::kExact;
    std::size_t n_avg = 1000;
    std::size_t capacity = kDefaultCapacity;
    PulseConfig pulses;
    /// Draw the same realizations for every w instead of independent ones.
    bool share_realizations = false;

    void validate() const {
        if (n_realizations < 1) throw ConfigError("n_realizations must be at least 1");
        if (w_values.empty()) throw ConfigError("w_values must not be empty");
        if (!(tau > 0.0)) throw ConfigError("tau must be positive");
        if (capacity < 1) throw ConfigError("capacity must be positive");
        if (measurement == MeasurementMode::kSampled && n_avg < 1) throw ConfigError("n_avg must be positive");
        if (backend == Backend::kNoisy) noise.validate(2);
    }
};

struct RealizationResult {
    std::size_t w_index = 0;
    std::size_t index = 0;
    DisorderRealization realization;
    std::vector<double> p0;
    std::vector<double> p1;
    std::vector<double> imbalance;
};

/// Per-step imbalance for one w, averaged across realizations.
struct ImbalanceSeries {
    double w = 0.0;
    std::vector<double> mean;
    std::vector<double> stderr_;
    std::size_t n_realizations = 0;
};

struct PagingSummary {
    std::uint64_t total_loads = 0;
    std::uint64_t total_hits = 0;
    std::size_t capacity = 0;
    std::uint64_t programs = 0;
};

struct ExperimentResult {
    std::vector<ImbalanceSeries> series;
    std::vector<RealizationResult> realizations;
    std::vector<PageReport> page_reports;
    PagingSummary paging;
};

struct ExperimentHooks {
    /// After each page update, with the program and the table it produced.
    std::function<void(const QuantumProgram &, const PageReport &, const Rct &)> on_page;
    /// After each noisy-backend slot.
    SlotObserver on_noisy_slot;
};

inline std::uint64_t realization_seed(const ExperimentConfig &c, std::size_t w_index, std::size_t i) {
    return derive_seed(c.master_seed, {c.share_realizations ? 0 : w_index, i});
}

inline std::uint64_t paging_seed(const ExperimentConfig &c) { return derive_seed(c.master_seed, {0x70616765ULL}); }

inline CapacityExceeded with_realization(const CapacityExceeded &e, const DisorderRealization &r, std::size_t i,
                                         std::size_t k) {
    return CapacityExceeded(std::string(e.what()) + " (w=" + format_double(r.w) + ", realization " +
                            std::to_string(i) + ", seed " + std::to_string(r.seed) + ", k=" + std::to_string(k) + ")");
}

struct PagingReplay {
    std::vector<PageReport> page_reports;
    PagingSummary paging;
    QosRegistry qos;
    Rct rct;
};

/// Runs only DGS + paging over every program of the experiment, in the same
/// canonical order and with the same seeds as run_experiment.
inline PagingReplay replay_paging(const ExperimentConfig &config, const ExperimentHooks &hooks = {}) {
    config.validate();
    PagingReplay out;
    WaveformMemory memory(config.capacity, paging_seed(config), config.pulses);
    for (std::size_t wi = 0; wi < config.w_values.size(); ++wi) {
        for (std::size_t i = 0; i < config.n_realizations; ++i) {
            Rng rng(realization_seed(config, wi, i));
            const auto r = sample_disorder(config.w_values[wi], config.tau, config.n_steps, rng);
            for (std::size_t k = 0; k <= config.n_steps; ++k) {
                QuantumProgram program = build_native_circuit(r, k);
                PageReport report;
                try {
                    report = memory.load(program);
                } catch (const CapacityExceeded &e) {
                    throw with_realization(e, r, i, k);
                }
                if (hooks.on_page) hooks.on_page(program, report, memory.rct());
                out.page_reports.push_back(std::move(report));
            }
        }
    }
    out.paging = {memory.total_loads(), memory.total_hits(), config.capacity, memory.programs()};
    out.qos = memory.qos();
    out.rct = memory.rct();
    return out;
}

/// Runs every (w, realization, k) program through DGS + paging and the
/// selected backend, in the canonical order (w index, realization, k).
inline ExperimentResult run_experiment(const ExperimentConfig &config, const ExperimentHooks &hooks = {}) {
    config.validate();
    ExperimentResult result;
    WaveformMemory memory(config.capacity, paging_seed(config), config.pulses);

    for (std::size_t wi = 0; wi < config.w_values.size(); ++wi) {
        ImbalanceSeries series;
        series.w = config.w_values[wi];
        series.n_realizations = config.n_realizations;
        std::vector<std::vector<double>> per_step(config.n_steps + 1);

        for (std::size_t i = 0; i < config.n_realizations; ++i) {
            Rng rng(realization_seed(config, wi, i));
            RealizationResult rr;
            rr.w_index = wi;
            rr.index = i;
            rr.realization = sample_disorder(series.w, config.tau, config.n_steps, rng);

            for (std::size_t k = 0; k <= config.n_steps; ++k) {
                QuantumProgram program = build_native_circuit(rr.realization, k);
                PageReport report;
                try {
                    report = memory.load(program);
                } catch (const CapacityExceeded &e) {
                    throw with_realization(e, rr.realization, i, k);
                }
                if (hooks.on_page) hooks.on_page(program, report, memory.rct());
                result.page_reports.push_back(std::move(report));

                MeasurementSpec spec{config.measurement, config.n_avg, derive_seed(rr.realization.seed, {k})};
                MeasurementRecord rec = config.backend == Backend::kIdeal
                                            ? run_ideal(program, spec)
                                            : run_noisy(program, config.noise, spec, hooks.on_noisy_slot);
                const double p0 = rec.p1(kQ0Register);
                const double p1 = rec.p1(kQ1Register);
                rr.p0.push_back(p0);
                rr.p1.push_back(p1);
                rr.imbalance.push_back(imbalance(p0, p1));
                per_step[k].push_back(rr.imbalance.back());
            }
            result.realizations.push_back(std::move(rr));
        }

        for (const auto &values : per_step) {
            const double n = static_cast<double>(values.size());
            double sum = 0.0;
            for (double v : values) sum += v;
            const double mean = sum / n;
            double ss = 0.0;
            for (double v : values) ss += (v - mean) * (v - mean);
            series.mean.push_back(mean);
            series.stderr_.push_back(values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0);
        }
        result.series.push_back(std::move(series));
    }

    result.paging = {memory.total_loads(), memory.total_hits(), config.capacity, memory.programs()};
    return result;
}

}  // namespace rxyisa

#endif  // RXYISA_WORKLOAD_HPP
