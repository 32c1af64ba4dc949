// SPDX-License-Identifier: Apache-2.0

#include "bdris/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace bdris {

double path_loss_db(const PathLossParams& params, double distance_m, double shadow_db) {
    return params.intercept_db + 10.0 * params.exponent * std::log10(distance_m) + shadow_db;
}

double noise_power_dbm(double psd_dbm_hz, double bandwidth_hz) {
    return psd_dbm_hz + 10.0 * std::log10(bandwidth_hz);
}

double sample_laplace(double location, double scale, Rng& rng) {
    if (scale <= 0.0) throw std::invalid_argument("laplace scale must be positive");
    const double u = rng.uniform(-0.5, 0.5);
    const double sign = (u >= 0.0) ? 1.0 : -1.0;
    return location - scale * sign * std::log1p(-2.0 * std::abs(u));
}

VecC bs_ris_channel(const ArrayGeometry& geo) {
    const int m = geo.size();
    VecC g(m);
    const double lambda = geo.wavelength;
    for (int i = 0; i < m; ++i) {
        const double dm = geo.dist(i);
        // Incidence-angle taper times the combined radiating/reactive
        // near-field amplitude, at the phase of the traveled distance.
        const double amp = geo.cell_area * geo.separation / (dm * dm);
        const cd field(1.0 / (2.0 * kPi * dm), -1.0 / lambda);
        const double phase = 2.0 * kPi * dm / lambda;
        g(i) = amp * field * cd(std::cos(phase), std::sin(phase));
    }
    return g;
}

RisUeChannel sample_ris_ue_channel(const ArrayGeometry& geo, const ChannelParams& params,
                                   Scenario scenario, Rng& rng) {
    if (params.num_clusters <= 0 || params.num_paths <= 0) {
        throw std::invalid_argument("cluster and path counts must be positive");
    }
    const int m = geo.size();
    const int num_nlos = params.num_clusters * params.num_paths;
    const bool los = (scenario == Scenario::LosPresent);
    const double norm = std::sqrt(static_cast<double>(m) / (num_nlos + (los ? 1 : 0)));
    const double spread = deg2rad(params.angle_spread_deg);

    // One shadowing draw per realization and link type, shared by every
    // path of that type so large-scale conditions stay coherent.
    const double shadow_los = rng.normal(0.0, params.los.shadow_std_db);
    const double shadow_nlos = rng.normal(0.0, params.nlos.shadow_std_db);
    const double var_los = std::pow(10.0, -0.1 * path_loss_db(params.los, params.distance_m, shadow_los));
    const double var_nlos = std::pow(10.0, -0.1 * path_loss_db(params.nlos, params.distance_m, shadow_nlos));

    RisUeChannel chan;
    chan.scenario = scenario;
    chan.los_present = los;
    chan.h = VecC::Zero(m);
    chan.components.reserve(params.num_clusters + (los ? 1 : 0));

    // Departing paths enter the channel through the conjugated array
    // response, so that a surface beam pointed at a path's direction
    // combines with it at zero phase.
    if (los) {
        ChannelComponent direct;
        direct.dir.azimuth = rng.uniform(-kPi, kPi);
        direct.dir.elevation = rng.uniform(0.0, kPi / 2.0);
        const cd alpha = rng.cgauss(var_los);
        direct.partial = norm * alpha * steering_vector(geo, direct.dir).conjugate();
        chan.h += direct.partial;
        chan.components.push_back(std::move(direct));
    }

    for (int c = 0; c < params.num_clusters; ++c) {
        ChannelComponent cluster;
        cluster.dir.azimuth = rng.uniform(-kPi, kPi);
        cluster.dir.elevation = rng.uniform(0.0, kPi / 2.0);
        cluster.partial = VecC::Zero(m);
        for (int l = 0; l < params.num_paths; ++l) {
            Direction path;
            path.azimuth = sample_laplace(cluster.dir.azimuth, spread, rng);
            path.elevation = sample_laplace(cluster.dir.elevation, spread, rng);
            const cd beta = rng.cgauss(var_nlos);
            cluster.partial += norm * beta * steering_vector(geo, path).conjugate();
        }
        chan.h += cluster.partial;
        chan.components.push_back(std::move(cluster));
    }
    return chan;
}

} // namespace bdris
