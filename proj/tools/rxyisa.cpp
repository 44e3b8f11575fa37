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

#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "rxyisa/commands.hpp"

namespace {

using namespace rxyisa;

const std::map<std::string, Backend> kBackends = {{"ideal", Backend::kIdeal}, {"noisy", Backend::kNoisy}};
const std::map<std::string, MeasurementMode> kModes = {{"exact", MeasurementMode::kExact},
                                                        {"sampled", MeasurementMode::kSampled}};

int run(int argc, char **argv) {
    CLI::App app{"rxyisa: Rxy-native quantum instruction set toolchain"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    GenOptions gen;
    auto *gen_cmd = app.add_subcommand("gen", "Generate the native (or source) circuit for one disorder realization");
    gen_cmd->add_option("--w", gen.w, "Disorder strength");
    gen_cmd->add_option("--seed", gen.seed, "Seed of the disorder realization");
    gen_cmd->add_option("--k", gen.k, "Trotter step (number of intervals)");
    gen_cmd->add_option("--tau", gen.tau_over_pi, "Trotter step size in units of pi");
    gen_cmd->add_option("--n-steps", gen.n_steps, "Largest allowed Trotter step");
    gen_cmd->add_flag("--source", gen.source, "Emit the algorithm-level source circuit");
    gen_cmd->add_option("--out", gen.out, "Output file (stdout when omitted)");
    gen_cmd->add_option("--format", gen.format, "Output format")->check(CLI::IsMember({"asm", "json"}));

    CompileOptions comp;
    auto *compile_cmd = app.add_subcommand("compile", "Run compiler passes over an assembly file");
    compile_cmd->add_option("--in", comp.in, "Input assembly file")->required();
    compile_cmd->add_option("--passes", comp.passes, "Comma-separated pass list (frame-rotate, lower, schedule)");
    compile_cmd->add_option("--out", comp.out, "Output file (stdout when omitted)");
    compile_cmd->add_option("--format", comp.format, "Output format")->check(CLI::IsMember({"asm", "json"}));

    RunOptions runo;
    auto *run_cmd = app.add_subcommand("run", "Simulate a native assembly program");
    run_cmd->add_option("--in", runo.in, "Input assembly file")->required();
    run_cmd->add_option("--backend", runo.backend, "Simulation backend")->transform(CLI::CheckedTransformer(kBackends));
    run_cmd->add_option("--mode", runo.mode, "Measurement mode")->transform(CLI::CheckedTransformer(kModes));
    run_cmd->add_option("--n-avg", runo.n_avg, "Shots in sampled mode");
    run_cmd->add_option("--seed", runo.seed, "Shot sampling seed");
    run_cmd->add_option("--noise", runo.noise, "Noise parameter JSON (device defaults when omitted)");
    run_cmd->add_option("--out", runo.out, "Output file (stdout when omitted)");
    run_cmd->add_option("--format", runo.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

    ExperimentOptions exp;
    std::optional<Backend> exp_backend;
    std::optional<std::size_t> exp_capacity;
    std::optional<std::uint64_t> exp_seed;
    auto *exp_cmd = app.add_subcommand("experiment", "Run the disorder-averaged imbalance experiment");
    exp_cmd->add_option("--config", exp.config, "Experiment config JSON (built-in defaults when omitted)");
    exp_cmd->add_option("--golden", exp.golden, "Golden record to compare against");
    exp_cmd->add_option("--write-golden", exp.write_golden, "Write a golden record of this run");
    exp_cmd->add_option("--backend", exp_backend, "Override the config backend")
        ->transform(CLI::CheckedTransformer(kBackends));
    exp_cmd->add_option("--capacity", exp_capacity, "Override the rotation table capacity");
    exp_cmd->add_option("--seed", exp_seed, "Override the master seed");
    exp_cmd->add_option("--out", exp.out, "Output directory");
    exp_cmd->add_option("--format", exp.format, "Imbalance table format")->check(CLI::IsMember({"csv", "json"}));
    exp_cmd->add_flag("--dump-realizations", exp.dump_realizations, "Also write per-realization results");

    TrajectoryOptions traj;
    auto *traj_cmd = app.add_subcommand("trajectory", "Bloch-sphere path of |0> under one Rxy rotation");
    traj_cmd->add_option("--phi", traj.phi_over_pi, "Rotation axis angle in units of pi");
    traj_cmd->add_option("--gamma", traj.gamma_over_pi, "Rotation angle in units of pi");
    traj_cmd->add_option("--steps", traj.steps, "Number of time steps");
    traj_cmd->add_option("--out", traj.out, "Output file (stdout when omitted)");
    traj_cmd->add_option("--format", traj.format, "Output format")->check(CLI::IsMember({"csv", "json"}));

    PagingReportOptions page;
    std::optional<std::size_t> page_capacity;
    std::optional<std::uint64_t> page_seed;
    auto *page_cmd = app.add_subcommand("paging-report", "Replay waveform paging over every experiment program");
    page_cmd->add_option("--config", page.config, "Experiment config JSON (built-in defaults when omitted)");
    page_cmd->add_option("--capacity", page_capacity, "Override the rotation table capacity");
    page_cmd->add_option("--seed", page_seed, "Override the master seed");
    page_cmd->add_option("--out", page.out, "Output file (stdout when omitted)");
    page_cmd->add_option("--format", page.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    page_cmd->add_option("--pulses", page.pulses, "Write the resident pulse library JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : static_cast<int>(ExitCode::kGeneric);
    }

    if (*gen_cmd) cmd_gen(gen, std::cout);
    if (*compile_cmd) cmd_compile(comp, std::cout);
    if (*run_cmd) cmd_run(runo, std::cout);
    if (*exp_cmd) {
        exp.backend = exp_backend;
        exp.capacity = exp_capacity;
        exp.seed = exp_seed;
        cmd_experiment(exp, std::cout);
    }
    if (*traj_cmd) cmd_trajectory(traj, std::cout);
    if (*page_cmd) {
        page.capacity = page_capacity;
        page.seed = page_seed;
        cmd_paging_report(page, std::cout);
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    try {
        return run(argc, argv);
    } catch (const rxyisa::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(rxyisa::ExitCode::kGeneric);
    }
}
