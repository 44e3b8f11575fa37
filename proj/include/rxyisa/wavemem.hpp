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

#ifndef RXYISA_WAVEMEM_HPP
#define RXYISA_WAVEMEM_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rxyisa/errors.hpp"
#include "rxyisa/isa.hpp"
#include "rxyisa/linalg.hpp"
#include "rxyisa/rng.hpp"

namespace rxyisa {

// ---------------------------------------------------------------------------
// Pulse synthesis.

struct PulseConfig {
    double duration = 20e-9;
    double sample_rate = 1e9;
    /// Largest |gamma| / pi a pulse may encode; that rotation maps to full scale.
    double max_amplitude_ratio = 2.0;
};

struct PulseSpec {
    std::vector<Complex> samples;
    double duration = 0.0;
    double sample_rate = 0.0;
};

/// Gaussian-envelope MW pulse for Rxy(phi, gamma). The envelope has unit peak
/// at T/2 and sigma = T/4, sampled at bin centres. The rotation angle sets the
/// amplitude (linear in gamma, normalized so gamma = pi * max_amplitude_ratio is
/// full scale) and the axis sets the carrier phase e^{i phi}.
inline PulseSpec synthesize_pulse(const RotationKey &key, const PulseConfig &config = {}) {
    if (!(config.duration > 0.0) || !(config.sample_rate > 0.0) || !(config.max_amplitude_ratio > 0.0)) {
        throw ValidationError("pulse config requires positive duration, sample rate and amplitude ratio");
    }
    if (std::abs(key.gamma()) > kPi * config.max_amplitude_ratio + RotationKey::kTolerance) {
        throw AmplitudeOverflow("rotation angle " + std::to_string(key.gamma_over_pi()) +
                                "pi exceeds pulse full scale");
    }
    const auto n = static_cast<std::size_t>(std::llround(config.duration * config.sample_rate));
    const double t_total = config.duration;
    const double sigma = t_total / 4.0;
    const double amplitude = key.gamma_over_pi() / config.max_amplitude_ratio;
    const Complex carrier = std::exp(kI * key.phi());

    PulseSpec pulse;
    pulse.duration = config.duration;
    pulse.sample_rate = config.sample_rate;
    pulse.samples.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = (static_cast<double>(j) + 0.5) / config.sample_rate;
        const double envelope = std::exp(-(t - t_total / 2.0) * (t - t_total / 2.0) / (2.0 * sigma * sigma));
        pulse.samples.push_back(amplitude * envelope * carrier);
    }
    return pulse;
}

// ---------------------------------------------------------------------------
// Quantum operation specification and dynamic gate set.

/// Registry of supported rotations and their synthesized pulses.
class QosRegistry {
   public:
    QosRegistry() = default;
    explicit QosRegistry(PulseConfig config) : config_(config) {}

    const PulseConfig &config() const noexcept { return config_; }
    const std::map<RotationKey, PulseSpec> &entries() const noexcept { return entries_; }
    bool contains(const RotationKey &key) const { return entries_.contains(key); }
    std::size_t size() const noexcept { return entries_.size(); }

    const PulseSpec &pulse(const RotationKey &key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) throw ValidationError("rotation not in QOS");
        return it->second;
    }

    /// Adds a rotation, synthesizing its pulse. Returns false if already present.
    bool add(const RotationKey &key) {
        if (entries_.contains(key)) return false;
        entries_.emplace(key, synthesize_pulse(key, config_));
        return true;
    }

   private:
    PulseConfig config_;
    std::map<RotationKey, PulseSpec> entries_;
};

struct DgsResult {
    QosRegistry qos;
    RotationSet new_keys;
};

/// Identifies every distinct rotation used by the program and augments the
/// QOS with those it lacks.
inline DgsResult dgs_scan(const QuantumProgram &program, QosRegistry qos) {
    RotationSet fresh;
    for (const auto &key : rotation_keys(program)) {
        if (qos.add(key)) fresh.insert(key);
    }
    return {std::move(qos), std::move(fresh)};
}

// ---------------------------------------------------------------------------
// Rotation-to-codeword table and paging.

struct Codeword {
    std::uint32_t id = 0;
    auto operator<=>(const Codeword &) const = default;
};

/// Fixed codewords outside the rotation range for the non-rotation instructions.
inline Codeword cz_codeword(std::size_t capacity) { return Codeword{static_cast<std::uint32_t>(capacity)}; }
inline Codeword measure_codeword(std::size_t capacity) { return Codeword{static_cast<std::uint32_t>(capacity + 1)}; }
inline Codeword reset_codeword(std::size_t capacity) { return Codeword{static_cast<std::uint32_t>(capacity + 2)}; }

inline constexpr std::size_t kDefaultCapacity = 128;

/// Rotation-to-codeword table: which rotations currently have waveforms
/// loaded in the AWG, and under which codeword.
class Rct {
   public:
    explicit Rct(std::size_t capacity = kDefaultCapacity) : capacity_(capacity) {
        if (capacity == 0) throw ValidationError("RCT capacity must be positive");
        for (std::size_t i = 0; i < capacity; ++i) free_.insert(Codeword{static_cast<std::uint32_t>(i)});
    }

    std::size_t capacity() const noexcept { return capacity_; }
    const std::map<Codeword, RotationKey> &resident() const noexcept { return resident_; }
    const std::set<Codeword> &free() const noexcept { return free_; }
    std::uint64_t load_counter() const noexcept { return load_counter_; }
    bool full() const noexcept { return free_.empty(); }

    RotationSet resident_keys() const {
        RotationSet keys;
        for (const auto &[cw, key] : resident_) keys.insert(key);
        return keys;
    }

    std::optional<Codeword> codeword_of(const RotationKey &key) const {
        auto it = index_.find(key);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    void load(Codeword cw, const RotationKey &key) {
        free_.erase(cw);
        resident_[cw] = key;
        index_[key] = cw;
        ++load_counter_;
    }

    void evict(Codeword cw) {
        auto it = resident_.find(cw);
        index_.erase(it->second);
        resident_.erase(it);
        free_.insert(cw);
    }

   private:
    std::size_t capacity_;
    std::map<Codeword, RotationKey> resident_;
    std::map<RotationKey, Codeword> index_;
    std::set<Codeword> free_;
    std::uint64_t load_counter_ = 0;
};

struct PageReport {
    RotationSet mlst;
    RotationSet dlst;
    std::vector<std::pair<Codeword, RotationKey>> evicted;
    std::vector<std::pair<Codeword, RotationKey>> loaded;
    std::size_t hits = 0;
    std::uint64_t load_counter = 0;
};

/// Rotations required by the program but not resident.
inline RotationSet compute_mlst(const QuantumProgram &program, const Rct &rct) {
    RotationSet out;
    for (const auto &key : rotation_keys(program)) {
        if (!rct.codeword_of(key)) out.insert(key);
    }
    return out;
}

/// Resident rotations the program does not use.
inline RotationSet compute_dlst(const QuantumProgram &program, const Rct &rct) {
    const RotationSet needed = rotation_keys(program);
    RotationSet out;
    for (const auto &[cw, key] : rct.resident()) {
        if (!needed.contains(key)) out.insert(key);
    }
    return out;
}

struct PageUpdate {
    Rct rct;
    PageReport report;
};

/// Makes every rotation the program needs resident. Missing rotations take
/// free codewords first; once those run out, victims are drawn uniformly at
/// random from the dumping list. Needed rotations already resident keep their
/// codewords.
inline PageUpdate page_update(const QuantumProgram &program, Rct rct, Rng &rng) {
    const RotationSet needed = rotation_keys(program);
    if (needed.size() > rct.capacity()) {
        throw CapacityExceeded("program needs " + std::to_string(needed.size()) + " distinct rotations but the RCT holds " +
                               std::to_string(rct.capacity()));
    }
    PageReport report;
    report.mlst = compute_mlst(program, rct);
    report.dlst = compute_dlst(program, rct);
    report.hits = needed.size() - report.mlst.size();

    std::vector<std::pair<Codeword, RotationKey>> candidates;
    for (const auto &key : report.dlst) candidates.emplace_back(*rct.codeword_of(key), key);

    for (const auto &key : report.mlst) {
        Codeword slot;
        if (!rct.free().empty()) {
            slot = *rct.free().begin();
        } else {
            const auto pick = static_cast<std::size_t>(rng.below(candidates.size()));
            std::swap(candidates[pick], candidates.back());
            auto victim = candidates.back();
            candidates.pop_back();
            rct.evict(victim.first);
            report.evicted.push_back(victim);
            slot = victim.first;
        }
        rct.load(slot, key);
        report.loaded.emplace_back(slot, key);
    }
    report.load_counter = rct.load_counter();
    return {std::move(rct), std::move(report)};
}

/// One codeword per instruction in program order. cZ, measure and reset use
/// the reserved codewords above the rotation range.
inline std::vector<Codeword> assign_codewords(const QuantumProgram &program, const Rct &rct) {
    std::vector<Codeword> stream;
    for (const auto &slot : program.slots) {
        for (const auto &ins : slot.instructions) {
            stream.push_back(std::visit(overloaded{
                                            [&](const Rxy &r) {
                                                auto cw = rct.codeword_of(r.key);
                                                if (!cw) {
                                                    throw NotResident("rotation (" + std::to_string(r.key.phi_over_pi()) +
                                                                      "pi, " + std::to_string(r.key.gamma_over_pi()) +
                                                                      "pi) has no codeword");
                                                }
                                                return *cw;
                                            },
                                            [&](const CZ &) { return cz_codeword(rct.capacity()); },
                                            [&](const Measure &) { return measure_codeword(rct.capacity()); },
                                            [&](const Reset &) { return reset_codeword(rct.capacity()); },
                                        },
                                        ins));
        }
    }
    return stream;
}

/// Host-side waveform memory state: the QOS, the RCT, and the eviction stream.
/// Single writer; callers serialize `load` calls.
class WaveformMemory {
   public:
    WaveformMemory(std::size_t capacity, std::uint64_t seed, PulseConfig pulses = {})
        : qos_(pulses), rct_(capacity), rng_(seed) {}

    /// Runs DGS then PG for one program and returns the paging report.
    PageReport load(const QuantumProgram &program) {
        auto dgs = dgs_scan(program, qos_);
        qos_ = std::move(dgs.qos);
        auto update = page_update(program, rct_, rng_);
        rct_ = std::move(update.rct);
        total_hits_ += update.report.hits;
        ++programs_;
        return std::move(update.report);
    }

    const QosRegistry &qos() const noexcept { return qos_; }
    const Rct &rct() const noexcept { return rct_; }
    std::uint64_t total_loads() const noexcept { return rct_.load_counter(); }
    std::uint64_t total_hits() const noexcept { return total_hits_; }
    std::uint64_t programs() const noexcept { return programs_; }

   private:
    QosRegistry qos_;
    Rct rct_;
    Rng rng_;
    std::uint64_t total_hits_ = 0;
    std::uint64_t programs_ = 0;
};

}  // namespace rxyisa

#endif  // RXYISA_WAVEMEM_HPP
