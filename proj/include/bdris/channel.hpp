// SPDX-License-Identifier: Apache-2.0
//
// Channel models for both hops: a deterministic near-field link between
// the active antenna and the array cells, and a stochastic clustered
// multipath link between the array and the user terminal.

#pragma once

#include <vector>

#include "bdris/geometry.hpp"
#include "bdris/rng.hpp"
#include "bdris/types.hpp"

namespace bdris {

// Log-distance path loss: intercept + 10*exponent*log10(d) + shadowing.
struct PathLossParams {
    double intercept_db = 0.0;
    double exponent = 0.0;
    double shadow_std_db = 0.0;
};

double path_loss_db(const PathLossParams& params, double distance_m, double shadow_db);

// Thermal noise power over `bandwidth_hz` for a flat PSD in dBm/Hz.
double noise_power_dbm(double psd_dbm_hz, double bandwidth_hz);

// Laplace-distributed angular offset (inverse-CDF sampling).
double sample_laplace(double location, double scale, Rng& rng);

// Whether the direct component of the array-to-user link is present.
enum class Scenario {
    LosPresent,
    LosBlocked,
};

struct ChannelParams {
    PathLossParams los{61.4, 2.0, 5.8};
    PathLossParams nlos{72.0, 2.92, 8.7};
    int num_clusters = 8;          // C
    int num_paths = 10;            // L paths per cluster
    double angle_spread_deg = 7.5; // Laplace scale around each cluster center
    double distance_m = 20.0;      // array to user distance
};

// One resolvable component of the array-to-user link: the direct path or
// one cluster, with its nominal direction and its share of the channel.
struct ChannelComponent {
    Direction dir;
    VecC partial; // already scaled by the common power-normalization factor
};

struct RisUeChannel {
    VecC h;                                 // total channel = sum of components
    Scenario scenario = Scenario::LosPresent;
    bool los_present = false;               // components[0] is the direct path iff true
    std::vector<ChannelComponent> components;
};

// Near-field channel from the active antenna to each cell, combining
// spherical spreading, the reactive near-field term and the propagation
// phase accumulated over the per-cell distance.
VecC bs_ris_channel(const ArrayGeometry& geo);

// Draws one realization of the array-to-user channel. The draw order is
// fixed (shadowing for both link types, then the direct path, then each
// cluster's center and paths) so results are reproducible per stream.
RisUeChannel sample_ris_ue_channel(const ArrayGeometry& geo, const ChannelParams& params,
                                   Scenario scenario, Rng& rng);

} // namespace bdris
