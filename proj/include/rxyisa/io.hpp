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

#ifndef RXYISA_IO_HPP
#define RXYISA_IO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rxyisa/errors.hpp"
#include "rxyisa/format.hpp"
#include "rxyisa/simulator.hpp"
#include "rxyisa/wavemem.hpp"
#include "rxyisa/workload.hpp"

namespace rxyisa {

using Json = nlohmann::json;

inline constexpr const char *kToolVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Files.

inline std::string read_text_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path.string() + "'");
    return ss.str();
}

inline void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("error writing '" + path.string() + "'");
}

/// Parses JSON text; syntax errors become ParseError with the line number.
inline Json parse_json(const std::string &text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error &e) {
        const std::size_t end = std::min<std::size_t>(e.byte, text.size());
        const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + end, '\n'));
        throw ParseError(line, std::string("invalid JSON: ") + e.what());
    }
}

inline std::string dump_json(const Json &j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Serialization of library types.

inline Json to_json(const RotationKey &key) {
    return Json{{"phi_over_pi", key.phi_over_pi()}, {"gamma_over_pi", key.gamma_over_pi()}};
}

inline Json to_json(const RotationSet &keys) {
    Json arr = Json::array();
    for (const auto &k : keys) arr.push_back(to_json(k));
    return arr;
}

inline Json to_json(const std::vector<std::pair<Codeword, RotationKey>> &entries) {
    Json arr = Json::array();
    for (const auto &[cw, key] : entries) {
        Json e = to_json(key);
        e["codeword"] = cw.id;
        arr.push_back(std::move(e));
    }
    return arr;
}

inline Json to_json(const PageReport &r) {
    return Json{{"mlst", to_json(r.mlst)},       {"dlst", to_json(r.dlst)}, {"evicted", to_json(r.evicted)},
                {"loaded", to_json(r.loaded)},   {"hits", r.hits},          {"load_counter", r.load_counter}};
}

/// Codeword id -> {phi_over_pi, gamma_over_pi, samples: [[re, im], ...]} for
/// every rotation resident in the table.
inline Json pulse_library_json(const QosRegistry &qos, const Rct &rct) {
    Json lib = Json::object();
    for (const auto &[cw, key] : rct.resident()) {
        Json e = to_json(key);
        Json samples = Json::array();
        for (const auto &s : qos.pulse(key).samples) samples.push_back(Json::array({s.real(), s.imag()}));
        e["samples"] = std::move(samples);
        lib[std::to_string(cw.id)] = std::move(e);
    }
    return lib;
}

inline std::string to_string(MeasurementMode m) { return m == MeasurementMode::kExact ? "exact" : "sampled"; }

inline MeasurementMode measurement_mode_from_string(const std::string &s) {
    if (s == "exact") return MeasurementMode::kExact;
    if (s == "sampled") return MeasurementMode::kSampled;
    throw ConfigError("unknown measurement mode '" + s + "' (expected exact or sampled)");
}

inline std::string to_string(Backend b) { return b == Backend::kIdeal ? "ideal" : "noisy"; }

inline Backend backend_from_string(const std::string &s) {
    if (s == "ideal") return Backend::kIdeal;
    if (s == "noisy") return Backend::kNoisy;
    throw ConfigError("unknown backend '" + s + "' (expected ideal or noisy)");
}

inline Json to_json(const MeasurementRecord &rec) {
    Json j{{"mode", to_string(rec.mode)}};
    Json regs = Json::object();
    if (rec.mode == MeasurementMode::kExact) {
        for (const auto &[name, p] : rec.probability) regs[name] = p;
    } else {
        j["n_avg"] = rec.n_avg;
        for (const auto &[name, bits] : rec.bits) {
            Json arr = Json::array();
            for (auto b : bits) arr.push_back(static_cast<int>(b));
            regs[name] = std::move(arr);
        }
    }
    j["registers"] = std::move(regs);
    return j;
}

/// Infinite coherence times are written as the string "inf".
inline Json time_to_json(double t) {
    if (std::isinf(t)) return "inf";
    return t;
}

inline Json to_json(const NoiseParams &n) {
    Json t1 = Json::array(), t2 = Json::array();
    for (double t : n.t1) t1.push_back(time_to_json(t));
    for (double t : n.t2) t2.push_back(time_to_json(t));
    return Json{{"t1", t1},
                {"t2", t2},
                {"single_qubit_gate_duration", n.single_qubit_gate_duration},
                {"cz_duration", n.cz_duration},
                {"measure_duration", n.measure_duration},
                {"reset_duration", n.reset_duration}};
}

inline Json to_json(const PulseConfig &p) {
    return Json{{"duration", p.duration}, {"sample_rate", p.sample_rate}, {"max_amplitude_ratio", p.max_amplitude_ratio}};
}

inline Json to_json(const ExperimentConfig &c) {
    return Json{{"w_values", c.w_values},
                {"n_realizations", c.n_realizations},
                {"tau_over_pi", c.tau / kPi},
                {"n_steps", c.n_steps},
                {"master_seed", c.master_seed},
                {"backend", to_string(c.backend)},
                {"noise", to_json(c.noise)},
                {"measurement", Json{{"mode", to_string(c.measurement)}, {"n_avg", c.n_avg}}},
                {"capacity", c.capacity},
                {"pulses", to_json(c.pulses)},
                {"share_realizations", c.share_realizations}};
}

// ---------------------------------------------------------------------------
// Config parsing. Every object is checked against the set of known fields.

namespace io_detail {

using FieldHandlers = std::map<std::string, std::function<void(const Json &)>>;

inline void read_object(const Json &j, const std::string &context, const FieldHandlers &handlers) {
    if (!j.is_object()) throw ConfigError(context + " must be a JSON object");
    for (const auto &[key, value] : j.items()) {
        auto it = handlers.find(key);
        if (it == handlers.end()) throw ConfigError("unknown field '" + key + "' in " + context);
        try {
            it->second(value);
        } catch (const Json::exception &e) {
            throw ConfigError("bad value for '" + key + "' in " + context + ": " + e.what());
        }
    }
}

inline double number(const Json &v) {
    if (!v.is_number()) throw ConfigError("expected a number");
    return v.get<double>();
}

inline double time_value(const Json &v) {
    if (v.is_string() && v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
    return number(v);
}

inline std::uint64_t unsigned_value(const Json &v) {
    if (!v.is_number_unsigned()) throw ConfigError("expected a non-negative integer");
    return v.get<std::uint64_t>();
}

inline std::vector<double> times(const Json &v) {
    if (!v.is_array()) throw ConfigError("expected an array of times");
    std::vector<double> out;
    for (const auto &x : v) out.push_back(time_value(x));
    return out;
}

}  // namespace io_detail

inline NoiseParams noise_from_json(const Json &j, NoiseParams base = NoiseParams::device_defaults()) {
    using namespace io_detail;
    read_object(j, "noise",
                {{"t1", [&](const Json &v) { base.t1 = times(v); }},
                 {"t2", [&](const Json &v) { base.t2 = times(v); }},
                 {"single_qubit_gate_duration", [&](const Json &v) { base.single_qubit_gate_duration = number(v); }},
                 {"cz_duration", [&](const Json &v) { base.cz_duration = number(v); }},
                 {"measure_duration", [&](const Json &v) { base.measure_duration = number(v); }},
                 {"reset_duration", [&](const Json &v) { base.reset_duration = number(v); }}});
    return base;
}

inline PulseConfig pulses_from_json(const Json &j, PulseConfig base = {}) {
    using namespace io_detail;
    read_object(j, "pulses",
                {{"duration", [&](const Json &v) { base.duration = number(v); }},
                 {"sample_rate", [&](const Json &v) { base.sample_rate = number(v); }},
                 {"max_amplitude_ratio", [&](const Json &v) { base.max_amplitude_ratio = number(v); }}});
    return base;
}

/// Fields missing from the JSON keep their defaults; unknown fields are errors.
inline ExperimentConfig experiment_config_from_json(const Json &j) {
    using namespace io_detail;
    ExperimentConfig c;
    read_object(
        j, "experiment config",
        {{"w_values",
          [&](const Json &v) {
              if (!v.is_array()) throw ConfigError("w_values must be an array");
              c.w_values.clear();
              for (const auto &x : v) c.w_values.push_back(number(x));
          }},
         {"n_realizations", [&](const Json &v) { c.n_realizations = unsigned_value(v); }},
         {"tau_over_pi", [&](const Json &v) { c.tau = number(v) * kPi; }},
         {"n_steps", [&](const Json &v) { c.n_steps = unsigned_value(v); }},
         {"master_seed", [&](const Json &v) { c.master_seed = unsigned_value(v); }},
         {"backend", [&](const Json &v) { c.backend = backend_from_string(v.get<std::string>()); }},
         {"noise", [&](const Json &v) { c.noise = noise_from_json(v, c.noise); }},
         {"measurement",
          [&](const Json &v) {
              read_object(v, "measurement",
                          {{"mode", [&](const Json &m) { c.measurement = measurement_mode_from_string(m.get<std::string>()); }},
                           {"n_avg", [&](const Json &m) { c.n_avg = unsigned_value(m); }}});
          }},
         {"capacity", [&](const Json &v) { c.capacity = unsigned_value(v); }},
         {"pulses", [&](const Json &v) { c.pulses = pulses_from_json(v, c.pulses); }},
         {"share_realizations", [&](const Json &v) { c.share_realizations = v.get<bool>(); }}});
    c.validate();
    return c;
}

// ---------------------------------------------------------------------------
// Experiment outputs.

inline std::string experiment_csv(const ExperimentResult &result) {
    std::string out = "w,k,imbalance_mean,imbalance_stderr,n_realizations\n";
    for (const auto &s : result.series) {
        for (std::size_t k = 0; k < s.mean.size(); ++k) {
            out += format_double(s.w) + "," + std::to_string(k) + "," + format_double(s.mean[k]) + "," +
                   format_double(s.stderr_[k]) + "," + std::to_string(s.n_realizations) + "\n";
        }
    }
    return out;
}

inline Json experiment_json(const ExperimentResult &result) {
    Json rows = Json::array();
    for (const auto &s : result.series) {
        for (std::size_t k = 0; k < s.mean.size(); ++k) {
            rows.push_back(Json{{"w", s.w},
                                {"k", k},
                                {"imbalance_mean", s.mean[k]},
                                {"imbalance_stderr", s.stderr_[k]},
                                {"n_realizations", s.n_realizations}});
        }
    }
    return rows;
}

inline Json to_json(const PagingSummary &p) {
    return Json{{"total_loads", p.total_loads}, {"total_hits", p.total_hits}, {"capacity", p.capacity}};
}

inline Json realizations_json(const ExperimentResult &result) {
    Json arr = Json::array();
    for (const auto &rr : result.realizations) {
        const auto &r = rr.realization;
        arr.push_back(Json{{"w", r.w},
                           {"seed", r.seed},
                           {"h0x", r.h0x},
                           {"h0y", r.h0y},
                           {"h1x", r.h1x},
                           {"h1y", r.h1y},
                           {"I", rr.imbalance}});
    }
    return arr;
}

inline std::string trajectory_csv(const std::vector<BlochVector> &path) {
    std::string out = "step,theta_over_pi,phi_over_pi\n";
    for (std::size_t s = 0; s < path.size(); ++s) {
        out += std::to_string(s) + "," + format_double(path[s].theta / kPi) + "," + format_double(path[s].phi / kPi) +
               "\n";
    }
    return out;
}

inline Json trajectory_json(const std::vector<BlochVector> &path) {
    Json arr = Json::array();
    for (std::size_t s = 0; s < path.size(); ++s) {
        arr.push_back(Json{{"step", s}, {"theta_over_pi", path[s].theta / kPi}, {"phi_over_pi", path[s].phi / kPi}});
    }
    return arr;
}

// ---------------------------------------------------------------------------
// Golden records.

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string config_hash(const ExperimentConfig &c) {
    std::ostringstream ss;
    ss << std::hex;
    ss.width(16);
    ss.fill('0');
    ss << fnv1a(to_json(c).dump());
    return ss.str();
}

struct GoldenValue {
    double w = 0.0;
    std::size_t k = 0;
    double imbalance = 0.0;
};

struct GoldenRecord {
    std::string config_hash;
    std::string tool_version = kToolVersion;
    std::vector<GoldenValue> values;
};

inline GoldenRecord make_golden(const ExperimentConfig &config, const ExperimentResult &result) {
    GoldenRecord g;
    g.config_hash = config_hash(config);
    for (const auto &s : result.series) {
        for (std::size_t k = 0; k < s.mean.size(); ++k) g.values.push_back({s.w, k, s.mean[k]});
    }
    return g;
}

inline Json to_json(const GoldenRecord &g) {
    Json values = Json::array();
    for (const auto &v : g.values) values.push_back(Json{{"w", v.w}, {"k", v.k}, {"imbalance", v.imbalance}});
    return Json{{"config_hash", g.config_hash}, {"tool_version", g.tool_version}, {"values", values}};
}

inline GoldenRecord golden_from_json(const Json &j) {
    using namespace io_detail;
    GoldenRecord g;
    read_object(j, "golden record",
                {{"config_hash", [&](const Json &v) { g.config_hash = v.get<std::string>(); }},
                 {"tool_version", [&](const Json &v) { g.tool_version = v.get<std::string>(); }},
                 {"values", [&](const Json &v) {
                      if (!v.is_array()) throw ConfigError("golden values must be an array");
                      for (const auto &e : v) {
                          GoldenValue gv;
                          read_object(e, "golden value",
                                      {{"w", [&](const Json &x) { gv.w = number(x); }},
                                       {"k", [&](const Json &x) { gv.k = unsigned_value(x); }},
                                       {"imbalance", [&](const Json &x) { gv.imbalance = number(x); }}});
                          g.values.push_back(gv);
                      }
                  }}});
    return g;
}

inline constexpr double kGoldenTolerance = 1e-9;

/// Throws GoldenConfigMismatch when the record was made for another config and
/// GoldenMismatch listing every (w, k) that differs by more than the tolerance.
inline void compare_golden(const GoldenRecord &golden, const ExperimentConfig &config, const ExperimentResult &result) {
    const std::string hash = config_hash(config);
    if (golden.config_hash != hash) {
        throw GoldenConfigMismatch("golden record config hash " + golden.config_hash + " does not match " + hash);
    }
    const GoldenRecord actual = make_golden(config, result);
    std::string offending;
    std::size_t n_bad = 0;
    auto note = [&](double w, std::size_t k, const std::string &why) {
        ++n_bad;
        offending += " (w=" + format_double(w) + ", k=" + std::to_string(k) + ": " + why + ")";
    };
    if (golden.values.size() != actual.values.size()) {
        throw GoldenMismatch("golden record has " + std::to_string(golden.values.size()) + " values, run produced " +
                             std::to_string(actual.values.size()));
    }
    for (std::size_t i = 0; i < actual.values.size(); ++i) {
        const auto &a = actual.values[i];
        const auto &g = golden.values[i];
        if (g.w != a.w || g.k != a.k) {
            note(a.w, a.k, "missing from golden record");
        } else if (!(std::abs(g.imbalance - a.imbalance) <= kGoldenTolerance)) {
            note(a.w, a.k, "expected " + format_double(g.imbalance) + ", got " + format_double(a.imbalance));
        }
    }
    if (n_bad > 0) throw GoldenMismatch(std::to_string(n_bad) + " values differ from golden record:" + offending);
}

}  // namespace rxyisa

#endif  // RXYISA_IO_HPP
