// SPDX-License-Identifier: Apache-2.0
//
// Tabular result output: TSV tables whose numeric cells use the shortest
// decimal form that round-trips exactly, plus JSON sidecars carrying the
// run provenance (experiment name, seed, echoed config, content hash).

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bdris {

// 64-bit FNV-1a over the raw bytes; stable across platforms.
std::uint64_t fnv1a64(std::string_view bytes);

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    // Formats a double with the shortest representation that parses back
    // to the identical bit pattern.
    static std::string num(double value);
    static std::string num(long long value);

    void add_row(std::vector<std::string> cells);

    // Header line then one tab-separated line per row.
    std::string to_tsv() const;
    void write_tsv(const std::string& path) const;

    // Sidecar <table>.meta.json with experiment name, seed, the echoed
    // config object, and "fnv1a64:<hex>" of the TSV bytes. Returns the
    // sidecar content for checksum bookkeeping.
    std::string write_meta(const std::string& table_path, const std::string& experiment,
                           std::uint64_t seed, const std::string& config_json) const;
};

struct ArtifactRecord {
    std::string path; // relative to the output directory
    std::string hash; // "fnv1a64:<hex>"
};

struct Manifest {
    std::string experiment;
    std::string config_path; // empty when defaults were used
    std::string output_dir;
    std::uint64_t seed = 0;
    std::vector<ArtifactRecord> artifacts;
    bool gates_passed = true;
    std::vector<std::string> gate_messages;

    void write(const std::string& path) const;
};

} // namespace bdris
