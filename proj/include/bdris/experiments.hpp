// SPDX-License-Identifier: Apache-2.0
//
// Named experiment pipelines behind the command-line runner. Each
// experiment writes tab-separated tables (with .meta.json sidecars)
// into an output directory, prints progress lines, and evaluates its
// embedded verification gates.

#pragma once

#include <string>
#include <vector>

#include "bdris/config.hpp"
#include "bdris/result.hpp"
#include "bdris/types.hpp"

namespace bdris {

struct ExperimentOutcome {
    bool gates_passed = true;
    std::vector<std::string> gate_messages; // "PASS:/FAIL:/INFO:" lines
    std::vector<ArtifactRecord> artifacts;  // files written, with hashes
};

// Accepted experiment names, in display order.
const std::vector<std::string>& experiment_names();

// Runs one named experiment. Throws std::invalid_argument for an
// unknown name and std::runtime_error for I/O failures.
ExperimentOutcome run_experiment(const std::string& name, const SimConfig& cfg,
                                 const std::string& out_dir, bool quiet);

// Columnar dump of one channel realization: cell index, feed channel
// real/imag, user channel real/imag.
std::string channel_dump_text(const VecC& g, const VecC& h);

// Columnar dump of a dense scattering matrix: row, col, real, imag.
std::string scattering_dump_text(const MatC& omega);

} // namespace bdris
