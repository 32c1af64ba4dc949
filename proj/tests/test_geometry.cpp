// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "bdris/geometry.hpp"
#include "bdris/types.hpp"

using namespace bdris;

namespace {

ArrayGeometry square(int n, double wavelength = 0.0107) {
    const double half = wavelength / 2.0;
    return build_geometry(n, n, half, half, half, wavelength, half * half);
}

std::vector<double> sorted_distances(const ArrayGeometry& geo) {
    std::vector<double> d(geo.dist.data(), geo.dist.data() + geo.dist.size());
    std::sort(d.begin(), d.end());
    return d;
}

} // namespace

TEST_CASE("2x2 half-wavelength array has four equidistant cells") {
    const double lambda = 0.0107;
    const ArrayGeometry geo = square(2, lambda);
    REQUIRE(geo.size() == 4);
    // Every cell sits half a diagonal pitch from the array centre.
    const double expected_offset = lambda * std::sqrt(2.0) / 4.0;
    const double expected_dist = lambda * std::sqrt(6.0) / 4.0;
    for (int i = 0; i < geo.size(); ++i) {
        CHECK(geo.offset(i) == doctest::Approx(expected_offset).epsilon(1e-14));
        CHECK(geo.dist(i) == doctest::Approx(expected_dist).epsilon(1e-14));
    }
}

TEST_CASE("single cell sits exactly at the feed separation") {
    const ArrayGeometry geo = build_geometry(1, 1, 0.005, 0.005, 0.02, 0.01, 2.5e-5);
    REQUIRE(geo.size() == 1);
    CHECK(geo.offset(0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(geo.dist(0) == doctest::Approx(0.02).epsilon(1e-15));
}

TEST_CASE("centre offsets of an odd-by-even grid follow the lattice radii") {
    const double dx = 0.004, dy = 0.006;
    const ArrayGeometry geo = build_geometry(3, 2, dx, dy, 0.01, 0.01, 1e-5);
    // Cells are stored x-fastest: index = iy * m_x + ix. Offsets from the
    // array centre: x component in {dx, 0, dx}, y component always dy/2.
    for (int iy = 0; iy < 2; ++iy) {
        for (int ix = 0; ix < 3; ++ix) {
            const int idx = iy * 3 + ix;
            const double off_x = (ix == 1) ? 0.0 : dx;
            const double expected = std::hypot(off_x, dy / 2.0);
            CHECK(geo.offset(idx) == doctest::Approx(expected).epsilon(1e-14));
            CHECK(geo.dist(idx) ==
                  doctest::Approx(std::hypot(0.01, expected)).epsilon(1e-14));
        }
    }
}

TEST_CASE("feed distances are invariant to swapping the grid axes") {
    const ArrayGeometry a = build_geometry(4, 3, 0.005, 0.005, 0.012, 0.01, 2.5e-5);
    const ArrayGeometry b = build_geometry(3, 4, 0.005, 0.005, 0.012, 0.01, 2.5e-5);
    const std::vector<double> da = sorted_distances(a);
    const std::vector<double> db = sorted_distances(b);
    REQUIRE(da.size() == db.size());
    for (std::size_t i = 0; i < da.size(); ++i) {
        CHECK(da[i] == doctest::Approx(db[i]).epsilon(1e-14));
    }
}

TEST_CASE("feed distances are mirror symmetric across the vertical axis") {
    const int mx = 4, my = 3;
    const ArrayGeometry geo = build_geometry(mx, my, 0.005, 0.006, 0.012, 0.01, 2.5e-5);
    for (int iy = 0; iy < my; ++iy) {
        for (int ix = 0; ix < mx; ++ix) {
            const int idx = iy * mx + ix;
            const int mirrored = iy * mx + (mx - 1 - ix);
            CHECK(geo.dist(idx) == doctest::Approx(geo.dist(mirrored)).epsilon(1e-14));
        }
    }
}

TEST_CASE("steering vectors have unit norm") {
    const ArrayGeometry geo = square(5);
    const Direction dirs[] = {{0.0, 0.0}, {0.7, 0.4}, {-2.1, 1.2}, {3.0, kPi / 2.0}};
    for (const Direction& dir : dirs) {
        CHECK(steering_vector(geo, dir).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("broadside steering vector is constant and real") {
    const ArrayGeometry geo = square(4);
    const VecC a = steering_vector(geo, Direction{0.0, 0.0});
    const double expected = 1.0 / std::sqrt(static_cast<double>(geo.size()));
    for (int i = 0; i < geo.size(); ++i) {
        CHECK(a(i).real() == doctest::Approx(expected).epsilon(1e-12));
        CHECK(a(i).imag() == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("endfire phase progression across a two-element row is half a cycle") {
    const double lambda = 0.0107;
    // Two cells along x at half-wavelength pitch; a wave arriving from the
    // horizon along +x accumulates a pi phase difference between them.
    const ArrayGeometry geo = build_geometry(2, 1, lambda / 2.0, lambda / 2.0,
                                             lambda / 2.0, lambda, lambda * lambda / 4.0);
    const VecC a = steering_vector(geo, Direction{0.0, kPi / 2.0});
    const cd ratio = a(1) / a(0);
    CHECK(ratio.real() == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ratio.imag() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("planar wavevector matches spherical components") {
    const double lambda = 0.0107;
    const Direction dir{0.6, 0.9};
    const Eigen::Vector2d k = wavevector(dir, lambda);
    const double k0 = 2.0 * kPi / lambda;
    CHECK(k(0) == doctest::Approx(k0 * std::sin(dir.elevation) * std::cos(dir.azimuth)).epsilon(1e-12));
    CHECK(k(1) == doctest::Approx(k0 * std::sin(dir.elevation) * std::sin(dir.azimuth)).epsilon(1e-12));
}

TEST_CASE("geometry construction rejects non-positive dimensions") {
    CHECK_THROWS_AS(build_geometry(0, 2, 0.005, 0.005, 0.01, 0.01, 2.5e-5), std::invalid_argument);
    CHECK_THROWS_AS(build_geometry(2, 2, -0.005, 0.005, 0.01, 0.01, 2.5e-5), std::invalid_argument);
    CHECK_THROWS_AS(build_geometry(2, 2, 0.005, 0.005, 0.01, -1.0, 2.5e-5), std::invalid_argument);
}
