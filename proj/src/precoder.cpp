// SPDX-License-Identifier: Apache-2.0

#include "bdris/precoder.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

namespace bdris {

BeamformingVector dominant_eigenmode(const VecC& h) {
    const double n = h.norm();
    if (n == 0.0) throw std::invalid_argument("dominant eigenmode of an all-zero channel");
    BeamformingVector out;
    out.origin = BeamformingOrigin::DominantEigenmode;
    // For a rank-1 row channel the top right singular vector is the
    // conjugate direction of the row itself.
    out.b = h.conjugate() / n;
    return out;
}

Codebook build_codebook(const ArrayGeometry& geo, int azimuth_steps, int elevation_steps) {
    if (azimuth_steps < 1 || elevation_steps < 1) {
        throw std::invalid_argument("codebook grids need at least one step per axis");
    }
    Codebook cb;
    cb.azimuths.resize(azimuth_steps + 1);
    cb.elevations.resize(elevation_steps + 1);
    for (int i = 0; i <= azimuth_steps; ++i) {
        cb.azimuths[i] = -kPi + 2.0 * kPi * i / azimuth_steps;
    }
    for (int j = 0; j <= elevation_steps; ++j) {
        cb.elevations[j] = (kPi / 2.0) * j / elevation_steps;
    }
    cb.beams.resize(geo.size(), static_cast<Eigen::Index>(cb.azimuths.size()) * cb.elevations.size());
    for (std::size_t i = 0; i < cb.azimuths.size(); ++i) {
        for (std::size_t j = 0; j < cb.elevations.size(); ++j) {
            const Direction dir{cb.azimuths[i], cb.elevations[j]};
            cb.beams.col(i * cb.elevations.size() + j) = steering_vector(geo, dir);
        }
    }
    return cb;
}

BeamformingVector select_codeword(const VecC& v1, const Codebook& codebook) {
    if (codebook.size() == 0) throw std::invalid_argument("empty codebook");
    const int n_el = static_cast<int>(codebook.elevations.size());
    int best = 0;
    double best_corr = -1.0;
    for (int k = 0; k < codebook.size(); ++k) {
        const double corr = std::abs(codebook.beams.col(k).dot(v1));
        if (corr > best_corr) {
            best_corr = corr;
            best = k;
        }
    }
    BeamformingVector out;
    out.origin = BeamformingOrigin::CodebookFeedback;
    out.b = codebook.beams.col(best);
    out.azimuth_index = best / n_el;
    out.elevation_index = best % n_el;
    return out;
}

BeamformingVector partial_csi_direction(const RisUeChannel& chan, const ArrayGeometry& geo) {
    if (chan.components.empty()) {
        throw std::invalid_argument("channel realization retains no per-component decomposition");
    }
    int best = 0;
    double best_score = -1.0;
    for (std::size_t c = 0; c < chan.components.size(); ++c) {
        const VecC a = steering_vector(geo, chan.components[c].dir);
        // Captured power of this component versus leakage from all the
        // others when aiming straight at its nominal direction.
        const double num = std::abs(chan.components[c].partial.cwiseProduct(a).sum());
        const double den = std::abs((chan.h - chan.components[c].partial).cwiseProduct(a).sum());
        const double score = (den == 0.0) ? std::numeric_limits<double>::infinity() : num / den;
        if (score > best_score) {
            best_score = score;
            best = static_cast<int>(c);
        }
    }
    BeamformingVector out;
    out.origin = BeamformingOrigin::AngularSelection;
    out.b = steering_vector(geo, chan.components[best].dir);
    return out;
}

} // namespace bdris
