// SPDX-License-Identifier: Apache-2.0

#include "bdris/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace bdris {

ArrayGeometry build_geometry(int m_x_count, int m_y_count, double dx, double dy,
                             double separation, double wavelength, double cell_area) {
    if (m_x_count <= 0 || m_y_count <= 0) {
        throw std::invalid_argument(
            fmt::format("array dimensions must be positive (got {}x{})", m_x_count, m_y_count));
    }
    if (dx <= 0.0) throw std::invalid_argument("cell pitch dx must be positive");
    if (dy <= 0.0) throw std::invalid_argument("cell pitch dy must be positive");
    if (separation <= 0.0) throw std::invalid_argument("antenna separation must be positive");
    if (wavelength <= 0.0) throw std::invalid_argument("wavelength must be positive");
    if (cell_area <= 0.0) throw std::invalid_argument("cell area must be positive");

    ArrayGeometry geo;
    geo.m_x_count = m_x_count;
    geo.m_y_count = m_y_count;
    geo.dx = dx;
    geo.dy = dy;
    geo.separation = separation;
    geo.wavelength = wavelength;
    geo.cell_area = cell_area;

    const int m = m_x_count * m_y_count;
    geo.pos_x.resize(m);
    geo.pos_y.resize(m);
    geo.offset.resize(m);
    geo.dist.resize(m);
    for (int i = 0; i < m; ++i) {
        const int ix = i % m_x_count;
        const int iy = i / m_x_count;
        geo.pos_x(i) = ix * dx;
        geo.pos_y(i) = iy * dy;
        // In-plane offset from the array center, written with integer
        // arithmetic so opposing cells land at exactly the same radius.
        const double off_x = 0.5 * dx * std::abs(2 * ix - m_x_count + 1);
        const double off_y = 0.5 * dy * std::abs(2 * iy - m_y_count + 1);
        geo.offset(i) = std::sqrt(off_x * off_x + off_y * off_y);
        geo.dist(i) = std::sqrt(separation * separation + geo.offset(i) * geo.offset(i));
    }
    return geo;
}

Eigen::Vector2d wavevector(const Direction& dir, double wavelength) {
    const double k0 = 2.0 * kPi / wavelength;
    const double st = std::sin(dir.elevation);
    return {k0 * st * std::cos(dir.azimuth), k0 * st * std::sin(dir.azimuth)};
}

VecC steering_vector(const ArrayGeometry& geo, const Direction& dir) {
    const Eigen::Vector2d k = wavevector(dir, geo.wavelength);
    const int m = geo.size();
    VecC a(m);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (int i = 0; i < m; ++i) {
        const double phase = k(0) * geo.pos_x(i) + k(1) * geo.pos_y(i);
        a(i) = scale * cd(std::cos(phase), std::sin(phase));
    }
    return a;
}

} // namespace bdris
