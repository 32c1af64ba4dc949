// SPDX-License-Identifier: Apache-2.0
//
// Planar RIS geometry with an active antenna placed behind the array
// center, plus far-field steering vectors for the UE side.

#pragma once

#include <vector>

#include "bdris/types.hpp"

namespace bdris {

// Propagation direction seen from the array; angles in radians.
// azimuth in [-pi, pi], elevation in [0, pi/2] (0 = broadside).
struct Direction {
    double azimuth = 0.0;
    double elevation = 0.0;
};

struct ArrayGeometry {
    int m_x_count = 0;      // cells along x
    int m_y_count = 0;      // cells along y
    double dx = 0;          // cell pitch along x [m]
    double dy = 0;          // cell pitch along y [m]
    double separation = 0;  // active antenna to array plane distance [m]
    double wavelength = 0;  // carrier wavelength [m]
    double cell_area = 0;   // effective cell aperture [m^2]
    VecD pos_x;             // per-cell x position in the array plane [m]
    VecD pos_y;             // per-cell y position [m]
    VecD offset;            // per-cell in-plane distance to the array center [m]
    VecD dist;              // active antenna to cell distance d_m [m]

    int size() const { return m_x_count * m_y_count; }
};

// Cell m = m_y * m_x_count + m_x sits at [m_x*dx, m_y*dy]; the active
// antenna faces the array center at distance `separation` behind it.
ArrayGeometry build_geometry(int m_x_count, int m_y_count, double dx, double dy,
                             double separation, double wavelength, double cell_area);

// In-plane wavenumber vector k(phi, theta) [rad/m].
Eigen::Vector2d wavevector(const Direction& dir, double wavelength);

// Unit-norm far-field steering vector a(phi, theta), entries (1/sqrt(M)) e^{j k.p_m}.
VecC steering_vector(const ArrayGeometry& geo, const Direction& dir);

} // namespace bdris
