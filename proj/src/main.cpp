// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "bdris/config.hpp"
#include "bdris/experiments.hpp"
#include "bdris/result.hpp"

namespace {

constexpr int kExitGatesPassed = 0;
constexpr int kExitGateFailure = 1;
constexpr int kExitUsage = 2;

int fail(const std::string& category, const std::string& message) {
    fmt::print(stderr, "error: {}: {}\n", category, message);
    return category == "gates" || category == "io" ? kExitGateFailure : kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Passive-beamforming simulator for base-station-fed reconfigurable surfaces"};
    app.set_version_flag("--version", "bdris-sim 0.1.0");

    std::string experiment;
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    int threads = 1;
    bool quiet = false;

    app.add_option("experiment", experiment,
                   fmt::format("one of: {}", fmt::join(bdris::experiment_names(), ", ")))
        ->required();
    app.add_option("--config", config_path, "JSON configuration file (defaults when omitted)");
    app.add_option("--out", out_dir, "output directory (created if missing)")
        ->capture_default_str();
    CLI::Option* seed_opt =
        app.add_option("--seed", seed, "override the random seed from the configuration");
    app.add_option("--threads", threads, "worker threads (reserved; the engine is serial)")
        ->check(CLI::PositiveNumber);
    app.add_flag("--quiet", quiet, "suppress progress output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what());
    }

    const auto& names = bdris::experiment_names();
    if (std::find(names.begin(), names.end(), experiment) == names.end()) {
        return fail("usage", fmt::format("unknown experiment '{}' (expected one of: {})",
                                         experiment, fmt::join(names, ", ")));
    }

    bdris::SimConfig cfg;
    try {
        cfg = bdris::load_config(config_path);
    } catch (const std::exception& e) {
        return fail("config", e.what());
    }
    if (seed_opt->count() > 0) cfg.eval.seed = seed;

    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        return fail("usage", fmt::format("cannot create output directory '{}': {}", out_dir,
                                         ec.message()));
    }

    bdris::ExperimentOutcome outcome;
    try {
        outcome = bdris::run_experiment(experiment, cfg, out_dir, quiet);
    } catch (const std::invalid_argument& e) {
        return fail("config", e.what());
    } catch (const std::exception& e) {
        return fail("io", e.what());
    }

    bdris::Manifest manifest;
    manifest.experiment = experiment;
    manifest.config_path = config_path;
    manifest.output_dir = out_dir;
    manifest.seed = cfg.eval.seed;
    manifest.artifacts = outcome.artifacts;
    manifest.gates_passed = outcome.gates_passed;
    manifest.gate_messages = outcome.gate_messages;
    try {
        manifest.write(out_dir + "/manifest.json");
    } catch (const std::exception& e) {
        return fail("io", e.what());
    }

    int failed = 0;
    for (const auto& line : outcome.gate_messages) {
        if (line.rfind("FAIL:", 0) == 0) ++failed;
    }
    if (!quiet) {
        fmt::print("{}: wrote {} artifact(s) to {}; manifest at {}/manifest.json\n", experiment,
                   outcome.artifacts.size(), out_dir, out_dir);
    }
    if (!outcome.gates_passed) {
        return fail("gates", fmt::format("{} gate check(s) failed", failed));
    }
    return kExitGatesPassed;
}
