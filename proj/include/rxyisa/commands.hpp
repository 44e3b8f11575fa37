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

#ifndef RXYISA_COMMANDS_HPP
#define RXYISA_COMMANDS_HPP

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rxyisa/assembly.hpp"
#include "rxyisa/compiler.hpp"
#include "rxyisa/io.hpp"
#include "rxyisa/simulator.hpp"
#include "rxyisa/wavemem.hpp"
#include "rxyisa/workload.hpp"

namespace rxyisa {

namespace cmd_detail {

/// Writes to `out` when a path is given, otherwise to the stream.
inline void emit(const std::string &text, const std::string &out, std::ostream &stream) {
    if (out.empty()) {
        stream << text;
    } else {
        write_text_file(out, text);
    }
}

inline void check_format(const std::string &format, std::initializer_list<const char *> allowed) {
    for (const char *a : allowed) {
        if (format == a) return;
    }
    std::string list;
    for (const char *a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
    throw ConfigError("unsupported format '" + format + "' (expected one of: " + list + ")");
}

inline std::vector<std::string> split_passes(const std::string &text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (c != ' ') {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace cmd_detail

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
    double w = 25.0;
    std::uint64_t seed = kDefaultMasterSeed;
    std::size_t k = 10;
    double tau_over_pi = 0.04;
    std::size_t n_steps = 10;
    /// Emit the algorithm-level source circuit instead of the native one.
    bool source = false;
    std::string out;
    std::string format = "asm";
};

inline std::string gen_text(const GenOptions &o) {
    cmd_detail::check_format(o.format, {"asm", "json"});
    Rng rng(o.seed);
    const auto r = sample_disorder(o.w, o.tau_over_pi * kPi, o.n_steps, rng);
    const std::string body = o.source ? emit_source_program(build_source_circuit(r, o.k))
                                      : emit_program(build_native_circuit(r, o.k));
    if (o.format == "asm") {
        return "# rxyisa gen w=" + format_double(o.w) + " seed=" + std::to_string(o.seed) + " k=" + std::to_string(o.k) +
               " tau_over_pi=" + format_double(o.tau_over_pi) + " h0x=" + format_double(r.h0x) +
               " h0y=" + format_double(r.h0y) + " h1x=" + format_double(r.h1x) + " h1y=" + format_double(r.h1y) +
               "\n" + body;
    }
    Json j{{"w", o.w},   {"seed", o.seed}, {"k", o.k},          {"tau_over_pi", o.tau_over_pi},
           {"h0x", r.h0x}, {"h0y", r.h0y}, {"h1x", r.h1x}, {"h1y", r.h1y}, {"assembly", body}};
    if (!o.source) {
        const auto c = gate_census(build_native_circuit(r, o.k));
        j["census"] = Json{{"single_qubit", c.single_qubit}, {"two_qubit", c.two_qubit}, {"measure", c.measure},
                           {"reset", c.reset}};
    }
    return dump_json(j);
}

inline void cmd_gen(const GenOptions &o, std::ostream &stream) { cmd_detail::emit(gen_text(o), o.out, stream); }

// ---------------------------------------------------------------------------
// compile

struct CompileOptions {
    std::string in;
    std::string passes = "frame-rotate,lower,schedule";
    std::string out;
    std::string format = "asm";
};

struct CompileOutput {
    std::string assembly;
    std::optional<EquivalenceReport> equivalence;
};

inline CompileOutput compile_text(const std::string &text, const std::vector<std::string> &passes) {
    const SourceProgram input = parse_source_program(text);
    const CompiledProgram output = run_passes(input, passes);
    CompileOutput result;
    result.assembly = std::visit(overloaded{
                                     [](const SourceProgram &p) { return emit_source_program(p); },
                                     [](const QuantumProgram &p) { return emit_program(p); },
                                 },
                                 output);
    const bool output_unitary =
        std::visit([](const auto &p) { return is_unitary_only(p); }, output);
    if (is_unitary_only(input) && output_unitary) {
        const Matrix u_in = program_unitary(input);
        const Matrix u_out = std::visit([](const auto &p) { return program_unitary(p); }, output);
        result.equivalence = equivalence_check(u_in, u_out, kCircuitTolerance);
    }
    return result;
}

inline void cmd_compile(const CompileOptions &o, std::ostream &stream) {
    cmd_detail::check_format(o.format, {"asm", "json"});
    const auto result = compile_text(read_text_file(o.in), cmd_detail::split_passes(o.passes));
    if (o.format == "json") {
        Json j{{"assembly", result.assembly}};
        if (result.equivalence) {
            j["phase_invariant_distance"] = result.equivalence->phase_invariant_distance;
            j["equivalent"] = result.equivalence->equivalent;
        } else {
            j["phase_invariant_distance"] = nullptr;
        }
        cmd_detail::emit(dump_json(j), o.out, stream);
        return;
    }
    cmd_detail::emit(result.assembly, o.out, stream);
    if (result.equivalence) {
        stream << "# phase_invariant_distance " << format_double(result.equivalence->phase_invariant_distance)
               << (result.equivalence->equivalent ? " (equivalent)" : " (NOT equivalent)") << "\n";
    }
}

// ---------------------------------------------------------------------------
// run

struct RunOptions {
    std::string in;
    Backend backend = Backend::kIdeal;
    MeasurementMode mode = MeasurementMode::kExact;
    std::size_t n_avg = 1000;
    std::uint64_t seed = kDefaultMasterSeed;
    /// JSON file with noise parameters; device defaults when empty.
    std::string noise;
    std::string out;
    std::string format = "json";
};

inline MeasurementRecord run_program(const QuantumProgram &program, const RunOptions &o) {
    const MeasurementSpec spec{o.mode, o.n_avg, o.seed};
    if (o.backend == Backend::kIdeal) return run_ideal(program, spec);
    const NoiseParams noise =
        o.noise.empty() ? NoiseParams::device_defaults() : noise_from_json(parse_json(read_text_file(o.noise)));
    return run_noisy(program, noise, spec);
}

inline void cmd_run(const RunOptions &o, std::ostream &stream) {
    cmd_detail::check_format(o.format, {"json", "csv"});
    if (o.mode == MeasurementMode::kSampled && o.n_avg < 1) throw ConfigError("n_avg must be positive");
    const auto program = parse_program(read_text_file(o.in));
    const auto rec = run_program(program, o);
    if (o.format == "json") {
        cmd_detail::emit(dump_json(to_json(rec)), o.out, stream);
        return;
    }
    std::string csv = "register,probability_one\n";
    for (const auto &[name, p] : rec.probability) csv += name + "," + format_double(p) + "\n";
    cmd_detail::emit(csv, o.out, stream);
}

// ---------------------------------------------------------------------------
// experiment

struct ExperimentOptions {
    /// JSON config; built-in defaults when empty.
    std::string config;
    std::string golden;
    /// Writes a golden record of this run to the given path.
    std::string write_golden;
    std::optional<Backend> backend;
    std::optional<std::size_t> capacity;
    std::optional<std::uint64_t> seed;
    std::string out = ".";
    std::string format = "csv";
    bool dump_realizations = false;
};

inline ExperimentConfig load_experiment_config(const std::string &path, std::optional<Backend> backend,
                                               std::optional<std::size_t> capacity,
                                               std::optional<std::uint64_t> seed) {
    ExperimentConfig c = path.empty() ? ExperimentConfig{} : experiment_config_from_json(parse_json(read_text_file(path)));
    if (backend) c.backend = *backend;
    if (capacity) c.capacity = *capacity;
    if (seed) c.master_seed = *seed;
    c.validate();
    return c;
}

inline void prepare_out_dir(const std::filesystem::path &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
}

inline ExperimentResult cmd_experiment(const ExperimentOptions &o, std::ostream &stream) {
    cmd_detail::check_format(o.format, {"csv", "json"});
    const ExperimentConfig config = load_experiment_config(o.config, o.backend, o.capacity, o.seed);
    std::optional<GoldenRecord> golden;
    if (!o.golden.empty()) golden = golden_from_json(parse_json(read_text_file(o.golden)));
    const std::filesystem::path dir(o.out);
    prepare_out_dir(dir);

    const ExperimentResult result = run_experiment(config);

    if (o.format == "csv") {
        write_text_file(dir / "imbalance.csv", experiment_csv(result));
    } else {
        write_text_file(dir / "imbalance.json", dump_json(experiment_json(result)));
    }
    write_text_file(dir / "paging.json", dump_json(to_json(result.paging)));
    if (o.dump_realizations) write_text_file(dir / "realizations.json", dump_json(realizations_json(result)));
    if (!o.write_golden.empty()) write_text_file(o.write_golden, dump_json(to_json(make_golden(config, result))));

    for (const auto &s : result.series) {
        stream << "w=" << format_double(s.w) << " I(k):";
        for (double m : s.mean) stream << " " << format_double(m, 6);
        stream << "\n";
    }
    stream << "paging: " << result.paging.total_loads << " loads, " << result.paging.total_hits << " hits over "
           << result.paging.programs << " programs (capacity " << result.paging.capacity << ")\n";

    if (golden) {
        compare_golden(*golden, config, result);
        stream << "golden: match\n";
    }
    return result;
}

// ---------------------------------------------------------------------------
// trajectory

struct TrajectoryOptions {
    double phi_over_pi = 0.2;
    double gamma_over_pi = 1.0;
    std::size_t steps = 20;
    std::string out;
    std::string format = "csv";
};

inline void cmd_trajectory(const TrajectoryOptions &o, std::ostream &stream) {
    cmd_detail::check_format(o.format, {"csv", "json"});
    const auto path = rotation_trajectory(RotationKey::from_units_of_pi(o.phi_over_pi, o.gamma_over_pi), o.steps);
    cmd_detail::emit(o.format == "csv" ? trajectory_csv(path) : dump_json(trajectory_json(path)), o.out, stream);
}

// ---------------------------------------------------------------------------
// paging-report

struct PagingReportOptions {
    std::string config;
    std::optional<std::size_t> capacity;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "json";
    /// Writes the resident pulse library after the replay to this path.
    std::string pulses;
};

inline void cmd_paging_report(const PagingReportOptions &o, std::ostream &stream) {
    cmd_detail::check_format(o.format, {"json", "csv"});
    const ExperimentConfig config = load_experiment_config(o.config, std::nullopt, o.capacity, o.seed);
    const PagingReplay replay = replay_paging(config);
    const std::size_t per_realization = config.n_steps + 1;
    const std::size_t per_w = per_realization * config.n_realizations;

    if (o.format == "json") {
        Json reports = Json::array();
        for (std::size_t n = 0; n < replay.page_reports.size(); ++n) {
            Json r = to_json(replay.page_reports[n]);
            r["program"] = n;
            r["w"] = config.w_values[n / per_w];
            r["realization"] = (n % per_w) / per_realization;
            r["k"] = n % per_realization;
            reports.push_back(std::move(r));
        }
        cmd_detail::emit(dump_json(Json{{"summary", to_json(replay.paging)}, {"reports", reports}}), o.out, stream);
    } else {
        std::string csv = "program,w,realization,k,mlst,dlst,loaded,evicted,hits,load_counter\n";
        for (std::size_t n = 0; n < replay.page_reports.size(); ++n) {
            const auto &r = replay.page_reports[n];
            csv += std::to_string(n) + "," + format_double(config.w_values[n / per_w]) + "," +
                   std::to_string((n % per_w) / per_realization) + "," + std::to_string(n % per_realization) + "," +
                   std::to_string(r.mlst.size()) + "," + std::to_string(r.dlst.size()) + "," +
                   std::to_string(r.loaded.size()) + "," + std::to_string(r.evicted.size()) + "," +
                   std::to_string(r.hits) + "," + std::to_string(r.load_counter) + "\n";
        }
        cmd_detail::emit(csv, o.out, stream);
    }
    if (!o.pulses.empty()) write_text_file(o.pulses, dump_json(pulse_library_json(replay.qos, replay.rct)));
}

}  // namespace rxyisa

#endif  // RXYISA_COMMANDS_HPP
