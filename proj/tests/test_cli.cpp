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

#include <filesystem>
#include <string>

#include "rxyisa/io.hpp"
#include "test_util.hpp"

using namespace rxyisa;
using namespace rxyisa::testing;

namespace {

const std::string kCli = RXYISA_CLI_PATH;
const std::string kSourceDir = RXYISA_SOURCE_DIR;

CommandResult cli(const std::string &args) { return run_command("\"" + kCli + "\" " + args); }

std::size_t count_lines(const std::string &s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

std::size_t count_prefix(const std::string &text, const std::string &token) {
    std::size_t n = 0;
    for (std::size_t pos = text.find(token); pos != std::string::npos; pos = text.find(token, pos + 1)) ++n;
    return n;
}

const char *kSmallConfig = R"({"w_values": [1, 25], "n_realizations": 2, "n_steps": 3})";

std::filesystem::path small_config(const std::filesystem::path &dir) {
    write_text_file(dir / "small.json", kSmallConfig);
    return dir / "small.json";
}

TEST(CliGen, KZeroIsSixLines) {
    const auto r = cli("gen --k 0");
    ASSERT_EQ(r.exit_code, 0) << r.output;
    EXPECT_EQ(count_lines(r.output), 6u) << r.output;
    EXPECT_EQ(r.output.rfind("# rxyisa gen w=25 seed=2020 k=0", 0), 0u) << r.output;
}

TEST(CliGen, FullCircuitCensus) {
    const auto r = cli("gen --k 10");
    ASSERT_EQ(r.exit_code, 0) << r.output;
    EXPECT_EQ(count_prefix(r.output, "rxy "), 104u);
    EXPECT_EQ(count_prefix(r.output, "cz "), 40u);
    const auto j = cli("gen --k 10 --format json");
    ASSERT_EQ(j.exit_code, 0) << j.output;
    const Json parsed = parse_json(j.output);
    EXPECT_EQ(parsed["census"]["single_qubit"], 104);
    EXPECT_EQ(parsed["census"]["two_qubit"], 40);
}

TEST(CliGen, DeterministicAndSeedSensitive) {
    EXPECT_EQ(cli("gen --k 3 --seed 5").output, cli("gen --k 3 --seed 5").output);
    EXPECT_NE(cli("gen --k 3 --seed 5").output, cli("gen --k 3 --seed 6").output);
}

TEST(CliGen, StepOutOfRangeIsValidationError) {
    const auto r = cli("gen --k 11");
    EXPECT_EQ(r.exit_code, 3) << r.output;
}

TEST(CliGen, GeneratedCircuitRuns) {
    const auto dir = scratch_dir("cli_gen_run");
    ASSERT_EQ(cli("gen --k 0 --out " + (dir / "k0.rxy").string()).exit_code, 0);
    const auto r = cli("run --in " + (dir / "k0.rxy").string() + " --format csv");
    ASSERT_EQ(r.exit_code, 0) << r.output;
    EXPECT_NE(r.output.find("q0mZ,1\n"), std::string::npos) << r.output;
    EXPECT_NE(r.output.find("q1mZ,0\n"), std::string::npos) << r.output;
}

TEST(CliGen, SourceCircuitCompilesEquivalently) {
    const auto dir = scratch_dir("cli_gen_source");
    ASSERT_EQ(cli("gen --k 2 --source --out " + (dir / "src.rxy").string()).exit_code, 0);
    // Measurements make the program non-unitary, so only the assembly is printed.
    const auto r = cli("compile --in " + (dir / "src.rxy").string());
    ASSERT_EQ(r.exit_code, 0) << r.output;
    EXPECT_EQ(count_prefix(r.output, "cz "), 8u) << r.output;
}

TEST(CliCompile, LowerCnot) {
    const auto dir = scratch_dir("cli_compile");
    write_text_file(dir / "cnot.rxy", "qubits 2\ncnot q1, q0\n");
    const auto r = cli("compile --in " + (dir / "cnot.rxy").string() + " --passes lower");
    ASSERT_EQ(r.exit_code, 0) << r.output;
    EXPECT_EQ(count_prefix(r.output, "rxy "), 2u) << r.output;
    EXPECT_EQ(count_prefix(r.output, "cz "), 1u) << r.output;
    EXPECT_NE(r.output.find("(equivalent)"), std::string::npos) << r.output;

    const auto j = cli("compile --in " + (dir / "cnot.rxy").string() + " --format json");
    ASSERT_EQ(j.exit_code, 0) << j.output;
    const Json parsed = parse_json(j.output);
    EXPECT_LT(parsed["phase_invariant_distance"].get<double>(), 1e-10);
    EXPECT_TRUE(parsed["equivalent"].get<bool>());
}

TEST(CliCompile, ExampleFile) {
    const auto r = cli("compile --in " + kSourceDir + "/examples/rxyisa/cnot.rxy");
    ASSERT_EQ(r.exit_code, 0) << r.output;
    EXPECT_NE(r.output.find("(equivalent)"), std::string::npos) << r.output;
}

TEST(CliCompile, UnknownMnemonicNamesLine) {
    const auto dir = scratch_dir("cli_bad_asm");
    write_text_file(dir / "bad.rxy", "qubits 2\nrx q0, 0.5\nfoo q1\n");
    const auto r = cli("compile --in " + (dir / "bad.rxy").string());
    EXPECT_EQ(r.exit_code, 2) << r.output;
    EXPECT_NE(r.output.find("line 3"), std::string::npos) << r.output;
}

TEST(CliCompile, UnknownPass) {
    const auto r = cli("compile --in " + kSourceDir + "/examples/rxyisa/cnot.rxy --passes optimize");
    EXPECT_EQ(r.exit_code, 3) << r.output;
}

TEST(CliRun, SampledBellPair) {
    const auto dir = scratch_dir("cli_run");
    write_text_file(dir / "bell.rxy",
                    "qubits 2\nrxy q0, 0.5, 0.5\nrxy q1, 0.5, -0.5\ncz q0, q1\nrxy q1, 0.5, 0.5\n"
                    "{measure q0 -> a | measure q1 -> b}\n");
    const auto r = cli("run --in " + (dir / "bell.rxy").string() + " --mode sampled --n-avg 200 --seed 3");
    ASSERT_EQ(r.exit_code, 0) << r.output;
    const Json j = parse_json(r.output);
    EXPECT_EQ(j["registers"]["a"], j["registers"]["b"]);
    EXPECT_EQ(j["registers"]["a"].size(), 200u);
    EXPECT_EQ(r.output, cli("run --in " + (dir / "bell.rxy").string() + " --mode sampled --n-avg 200 --seed 3").output);
}

TEST(CliRun, NoisyBackend) {
    const auto dir = scratch_dir("cli_run_noisy");
    ASSERT_EQ(cli("gen --k 2 --out " + (dir / "k2.rxy").string()).exit_code, 0);
    const auto r = cli("run --in " + (dir / "k2.rxy").string() + " --backend noisy");
    ASSERT_EQ(r.exit_code, 0) << r.output;
    EXPECT_TRUE(parse_json(r.output)["registers"].contains("q0mZ"));
}

TEST(CliRun, MissingInputIsIoError) {
    EXPECT_EQ(cli("run --in /nonexistent/x.rxy").exit_code, 6);
}

TEST(CliExperiment, WritesTwentyTwoRows) {
    const auto dir = scratch_dir("cli_exp_rows");
    write_text_file(dir / "cfg.json", R"({"n_realizations": 2})");
    const auto r = cli("experiment --config " + (dir / "cfg.json").string() + " --out " + (dir / "out").string());
    ASSERT_EQ(r.exit_code, 0) << r.output;
    const std::string csv = read_file(dir / "out" / "imbalance.csv");
    EXPECT_EQ(count_lines(csv), 1u + 22u);
    EXPECT_TRUE(std::filesystem::exists(dir / "out" / "paging.json"));
}

TEST(CliExperiment, JsonFormatAndRealizations) {
    const auto dir = scratch_dir("cli_exp_json");
    const auto cfg = small_config(dir);
    const auto r = cli("experiment --config " + cfg.string() + " --format json --dump-realizations --out " +
                       (dir / "out").string());
    ASSERT_EQ(r.exit_code, 0) << r.output;
    EXPECT_EQ(parse_json(read_file(dir / "out" / "imbalance.json")).size(), 8u);
    EXPECT_EQ(parse_json(read_file(dir / "out" / "realizations.json")).size(), 4u);
}

TEST(CliExperiment, CapacityExceededExitCode) {
    const auto dir = scratch_dir("cli_exp_capacity");
    const auto cfg = small_config(dir);
    const auto r = cli("experiment --config " + cfg.string() + " --capacity 8 --out " + (dir / "out").string());
    EXPECT_EQ(r.exit_code, 4) << r.output;
    EXPECT_NE(r.output.find("realization 0"), std::string::npos) << r.output;
    EXPECT_EQ(cli("experiment --config " + cfg.string() + " --capacity 16 --out " + (dir / "out").string()).exit_code,
              0);
}

TEST(CliExperiment, GoldenRoundTripAndMismatch) {
    const auto dir = scratch_dir("cli_exp_golden");
    const auto cfg = small_config(dir);
    const std::string out = " --out " + (dir / "out").string();
    const std::string golden = (dir / "golden.json").string();
    ASSERT_EQ(cli("experiment --config " + cfg.string() + " --write-golden " + golden + out).exit_code, 0);
    const auto match = cli("experiment --config " + cfg.string() + " --golden " + golden + out);
    EXPECT_EQ(match.exit_code, 0) << match.output;
    EXPECT_NE(match.output.find("golden: match"), std::string::npos);

    Json g = parse_json(read_file(golden));
    g["values"][1]["imbalance"] = g["values"][1]["imbalance"].get<double>() + 0.01;
    write_text_file(dir / "tampered.json", dump_json(g));
    const auto bad = cli("experiment --config " + cfg.string() + " --golden " + (dir / "tampered.json").string() + out);
    EXPECT_EQ(bad.exit_code, 5) << bad.output;
    EXPECT_NE(bad.output.find("(w=1, k=1"), std::string::npos) << bad.output;

    const auto other = cli("experiment --config " + cfg.string() + " --seed 7 --golden " + golden + out);
    EXPECT_EQ(other.exit_code, 7) << other.output;
}

TEST(CliExperiment, ErrorExitCodes) {
    const auto dir = scratch_dir("cli_exp_errors");
    EXPECT_EQ(cli("experiment --config /nonexistent/cfg.json").exit_code, 6);
    write_text_file(dir / "bad.json", R"({"n_realizations": 0})");
    EXPECT_EQ(cli("experiment --config " + (dir / "bad.json").string()).exit_code, 3);
    write_text_file(dir / "unknown.json", R"({"bogus": 1})");
    EXPECT_EQ(cli("experiment --config " + (dir / "unknown.json").string()).exit_code, 3);
    write_text_file(dir / "syntax.json", "{\n\"w_values\": [1,\n}");
    EXPECT_EQ(cli("experiment --config " + (dir / "syntax.json").string()).exit_code, 2);
    EXPECT_EQ(cli("experiment --bogus-flag").exit_code, 1);
    EXPECT_EQ(cli("").exit_code, 1);
}

TEST(CliExperiment, ByteIdenticalOutputs) {
    const auto dir = scratch_dir("cli_exp_determinism");
    const auto cfg = small_config(dir);
    ASSERT_EQ(cli("experiment --config " + cfg.string() + " --out " + (dir / "a").string()).exit_code, 0);
    ASSERT_EQ(cli("experiment --config " + cfg.string() + " --out " + (dir / "b").string()).exit_code, 0);
    EXPECT_EQ(read_file(dir / "a" / "imbalance.csv"), read_file(dir / "b" / "imbalance.csv"));
    EXPECT_EQ(read_file(dir / "a" / "paging.json"), read_file(dir / "b" / "paging.json"));
    EXPECT_FALSE(read_file(dir / "a" / "paging.json").empty());
}

TEST(CliTrajectory, DefaultPath) {
    const auto r = cli("trajectory");
    ASSERT_EQ(r.exit_code, 0) << r.output;
    EXPECT_EQ(count_lines(r.output), 22u);
    const auto last = r.output.substr(r.output.rfind("\n20,") + 1);
    EXPECT_EQ(last.rfind("20,1,", 0), 0u) << last;
    const Json j = parse_json(cli("trajectory --format json --steps 4").output);
    EXPECT_EQ(j.size(), 5u);
}

TEST(CliPagingReport, JsonAndCsv) {
    const auto dir = scratch_dir("cli_paging");
    const auto cfg = small_config(dir);
    const auto r = cli("paging-report --config " + cfg.string() + " --pulses " + (dir / "pulses.json").string());
    ASSERT_EQ(r.exit_code, 0) << r.output;
    const Json j = parse_json(r.output);
    ASSERT_EQ(j["reports"].size(), 16u);
    EXPECT_EQ(j["reports"][5]["w"], 1.0);
    EXPECT_EQ(j["reports"][5]["realization"], 1);
    EXPECT_EQ(j["reports"][5]["k"], 1);
    EXPECT_EQ(j["reports"][8]["w"], 25.0);
    std::uint64_t loaded = 0;
    for (const auto &rep : j["reports"]) loaded += rep["loaded"].size();
    EXPECT_EQ(j["summary"]["total_loads"].get<std::uint64_t>(), loaded);
    EXPECT_FALSE(parse_json(read_file(dir / "pulses.json")).empty());

    const auto csv = cli("paging-report --config " + cfg.string() + " --format csv");
    ASSERT_EQ(csv.exit_code, 0);
    EXPECT_EQ(csv.output.rfind("program,w,realization,k,mlst,dlst,loaded,evicted,hits,load_counter\n", 0), 0u);
    EXPECT_EQ(count_lines(csv.output), 17u);
    EXPECT_EQ(cli("paging-report --config " + cfg.string() + " --capacity 8").exit_code, 4);
}

TEST(CliMisc, VersionAndHelp) {
    const auto v = cli("--version");
    EXPECT_EQ(v.exit_code, 0);
    EXPECT_NE(v.output.find(kToolVersion), std::string::npos);
    EXPECT_EQ(cli("--help").exit_code, 0);
    EXPECT_EQ(cli("gen --format yaml").exit_code, 1);
}

}  // namespace
