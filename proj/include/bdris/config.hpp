// SPDX-License-Identifier: Apache-2.0
//
// Declarative run configuration: one flat section per module, JSON on
// disk, defaults matching the reference operating point (28 GHz carrier,
// 10x10 half-wavelength array at half-wavelength separation, 20 m user
// link with 8 clusters of 10 paths, 20 dBm transmit power, BPSK).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bdris/channel.hpp"
#include "bdris/eval.hpp"
#include "bdris/geometry.hpp"
#include "bdris/ris_config.hpp"

namespace bdris {

struct GeometryConfig {
    int m_x = 10;
    int m_y = 10;
    double carrier_hz = 28e9;
    double pitch_x_wavelengths = 0.5;
    double pitch_y_wavelengths = 0.5;
    double separation_wavelengths = 0.5;
    double cell_area_wavelengths_sq = 0.25;

    double wavelength() const;
    ArrayGeometry build() const;
};

struct ChannelConfig {
    double distance_m = 20.0;
    int clusters = 8;
    int paths_per_cluster = 10;
    double angle_spread_deg = 7.5;
    double los_intercept_db = 61.4;
    double los_exponent = 2.0;
    double los_shadow_std_db = 5.8;
    double nlos_intercept_db = 72.0;
    double nlos_exponent = 2.92;
    double nlos_shadow_std_db = 8.7;
    std::string scenario = "los"; // "los" (direct path present) or "blocked"

    ChannelParams params() const;
    Scenario scenario_enum() const;
};

struct PrecoderConfig {
    int csi_case = 1; // 1 = full knowledge, 2 = codebook feedback, 3 = angular selection
    int codebook_azimuth_steps = 72;
    int codebook_elevation_steps = 18;

    CsiMode mode() const;
};

struct RisSectionConfig {
    std::string grouping = "linear"; // "linear", "rows", or "mirror"
    int group_count = 1;

    GroupingStrategy strategy() const;
};

struct EvalSectionConfig {
    double power_dbm = 20.0;
    std::vector<double> power_grid_dbm = {0, 5, 10, 15, 20, 25, 30};
    double noise_psd_dbm_hz = -174.0;
    double bandwidth_hz = 100e6;
    int constellation_order = 2;
    int trials = 10000;
    long long aber_max_bits = 10000000;
    long long aber_min_errors = 100;
    std::uint64_t seed = 1;
    std::string sweep_axis = "power"; // power | array_size | separation | group_count
    std::vector<int> sweep_sizes = {2, 4, 6, 8, 10};
    std::vector<double> sweep_separations_wavelengths = {0.5, 1.0, 1.5, 2.0};
    std::vector<int> sweep_group_counts = {1, 2, 4, 5, 10, 20};
    std::vector<int> gain_cluster_counts = {1, 2, 4, 8, 16, 32};

    double noise_power_dbm() const;
    double noise_power_mw() const;
};

struct SimConfig {
    GeometryConfig geometry;
    ChannelConfig channel;
    PrecoderConfig precoder;
    RisSectionConfig ris;
    EvalSectionConfig eval;

    // Builds the immutable per-run state the evaluators consume.
    LinkSetup make_link_setup() const;
};

// Parses and validates a JSON config document. Violations are collected
// across the whole document and thrown together as one std::runtime_error
// whose message lists every offending field path.
SimConfig parse_config_text(const std::string& text);

// Reads the file (empty path = all defaults) and parses it.
SimConfig load_config(const std::string& path);

// Canonical JSON echo of a (validated) config, for sidecar metadata.
std::string config_to_json(const SimConfig& config);

} // namespace bdris
