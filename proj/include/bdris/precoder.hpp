// SPDX-License-Identifier: Apache-2.0
//
// Beamforming target selection under three channel-knowledge regimes:
// full knowledge (dominant singular direction), quantized feedback from a
// fixed beam codebook, and angular selection of the cleanest resolvable
// path component.

#pragma once

#include <vector>

#include "bdris/channel.hpp"
#include "bdris/geometry.hpp"
#include "bdris/types.hpp"

namespace bdris {

enum class BeamformingOrigin {
    DominantEigenmode,
    CodebookFeedback,
    AngularSelection,
};

struct BeamformingVector {
    VecC b;                    // unit-norm target the surface steers toward
    BeamformingOrigin origin = BeamformingOrigin::DominantEigenmode;
    int azimuth_index = -1;    // grid indices when chosen from a codebook
    int elevation_index = -1;
};

// Beams on a uniform azimuth x elevation angle grid; beams are stored
// column-major with azimuth as the outer index.
struct Codebook {
    std::vector<double> azimuths;   // radians, [-pi, pi]
    std::vector<double> elevations; // radians, [0, pi/2]
    MatC beams;                     // column i*n_el + j = steering(az_i, el_j)

    int size() const { return static_cast<int>(beams.cols()); }
};

// Right singular direction of the 1 x M channel row, in closed form.
BeamformingVector dominant_eigenmode(const VecC& h);

// Uniform grid covering the full front hemisphere; the default step of
// 5 degrees gives 73 x 19 beams.
Codebook build_codebook(const ArrayGeometry& geo, int azimuth_steps = 72, int elevation_steps = 18);

// Best-correlated codeword against the ideal direction v1; ties broken
// toward the lowest azimuth index, then the lowest elevation index.
BeamformingVector select_codeword(const VecC& v1, const Codebook& codebook);

// Picks the resolvable component (direct path or cluster) with the best
// ratio of captured power to leakage from the other components when
// steered at its nominal direction, and aims there.
BeamformingVector partial_csi_direction(const RisUeChannel& chan, const ArrayGeometry& geo);

} // namespace bdris
