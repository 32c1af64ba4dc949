// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "bdris/channel.hpp"
#include "bdris/geometry.hpp"
#include "bdris/precoder.hpp"
#include "bdris/rng.hpp"
#include "bdris/types.hpp"

using namespace bdris;

namespace {

ArrayGeometry default_geometry(int n = 10) {
    const double lambda = 299792458.0 / 28e9;
    const double half = lambda / 2.0;
    return build_geometry(n, n, half, half, half, lambda, half * half);
}

VecC random_channel(int m, std::uint64_t stream) {
    Rng rng(3, stream);
    VecC h(m);
    for (int i = 0; i < m; ++i) h(i) = rng.cgauss(1.0);
    return h;
}

} // namespace

TEST_CASE("dominant eigenmode beam collects the full channel norm") {
    const VecC h = random_channel(25, 1);
    const BeamformingVector bf = dominant_eigenmode(h);
    CHECK(bf.origin == BeamformingOrigin::DominantEigenmode);
    CHECK(bf.b.norm() == doctest::Approx(1.0).epsilon(1e-12));
    const cd combined = (h.transpose() * bf.b)(0);
    CHECK(combined.real() == doctest::Approx(h.norm()).epsilon(1e-12));
    CHECK(combined.imag() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(dominant_eigenmode(VecC::Zero(4)), std::invalid_argument);
}

TEST_CASE("default codebook spans the full grid with unit-norm beams") {
    const ArrayGeometry geo = default_geometry(4);
    const Codebook cb = build_codebook(geo);
    CHECK(cb.azimuths.size() == 73);
    CHECK(cb.elevations.size() == 19);
    CHECK(cb.size() == 73 * 19);
    CHECK(cb.azimuths.front() == doctest::Approx(-kPi).epsilon(1e-14));
    CHECK(cb.azimuths.back() == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(cb.elevations.front() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(cb.elevations.back() == doctest::Approx(kPi / 2.0).epsilon(1e-14));
    for (int k = 0; k < cb.size(); k += 97) {
        CHECK(cb.beams.col(k).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }
    // The zero-elevation entry reduces to the broadside beam: constant real.
    const int broadside = 36 * 19 + 0;
    const double expected = 1.0 / std::sqrt(static_cast<double>(geo.size()));
    for (int i = 0; i < geo.size(); ++i) {
        CHECK(cb.beams(i, broadside).real() == doctest::Approx(expected).epsilon(1e-12));
        CHECK(cb.beams(i, broadside).imag() == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(build_codebook(geo, 0, 18), std::invalid_argument);
}

TEST_CASE("codeword selection returns the exactly matching beam") {
    const ArrayGeometry geo = default_geometry(6);
    const Codebook cb = build_codebook(geo);
    const int az = 10, el = 5;
    const VecC v1 = cb.beams.col(az * 19 + el);
    const BeamformingVector bf = select_codeword(v1, cb);
    CHECK(bf.origin == BeamformingOrigin::CodebookFeedback);
    CHECK(bf.azimuth_index == az);
    CHECK(bf.elevation_index == el);
    CHECK((bf.b - v1).norm() <= 1e-14);
}

TEST_CASE("codeword selection breaks ties at the lowest grid index") {
    const ArrayGeometry geo = default_geometry(4);
    const Codebook cb = build_codebook(geo);
    // A broadside target correlates perfectly with every zero-elevation
    // beam, whatever its azimuth label; the first one must win.
    const VecC v1 = VecC::Constant(geo.size(), cd(0.25, 0.0));
    const BeamformingVector bf = select_codeword(v1, cb);
    CHECK(bf.azimuth_index == 0);
    CHECK(bf.elevation_index == 0);
    CHECK_THROWS_AS(select_codeword(v1, Codebook{}), std::invalid_argument);
}

TEST_CASE("codeword selection maximises correlation over the codebook") {
    const ArrayGeometry geo = default_geometry(5);
    const Codebook cb = build_codebook(geo, 24, 6);
    const VecC h = random_channel(geo.size(), 2);
    const VecC v1 = dominant_eigenmode(h).b;
    const BeamformingVector bf = select_codeword(v1, cb);
    const double chosen = std::abs(bf.b.dot(v1));
    for (int k = 0; k < cb.size(); ++k) {
        CHECK(std::abs(cb.beams.col(k).dot(v1)) <= chosen * (1.0 + 1e-12));
    }
}

TEST_CASE("angular selection picks the only component when one exists") {
    const ArrayGeometry geo = default_geometry(5);
    ChannelParams params;
    params.num_clusters = 1;
    params.num_paths = 1;
    Rng rng(13, 0);
    const RisUeChannel chan = sample_ris_ue_channel(geo, params, Scenario::LosBlocked, rng);
    REQUIRE(chan.components.size() == 1);
    const BeamformingVector bf = partial_csi_direction(chan, geo);
    CHECK(bf.origin == BeamformingOrigin::AngularSelection);
    const VecC expected = steering_vector(geo, chan.components[0].dir);
    CHECK((bf.b - expected).norm() <= 1e-14);
    CHECK_THROWS_AS(partial_csi_direction(RisUeChannel{}, geo), std::invalid_argument);
}

TEST_CASE("angular selection maximises the capture-to-leakage ratio") {
    const ArrayGeometry geo = default_geometry(8);
    ChannelParams params;
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        Rng rng(17, trial);
        const RisUeChannel chan =
            sample_ris_ue_channel(geo, params, trial % 2 ? Scenario::LosPresent : Scenario::LosBlocked, rng);
        int best = 0;
        double best_score = -1.0;
        for (std::size_t c = 0; c < chan.components.size(); ++c) {
            const VecC a = steering_vector(geo, chan.components[c].dir);
            const double num = std::abs((chan.components[c].partial.transpose() * a)(0));
            const double den = std::abs(((chan.h - chan.components[c].partial).transpose() * a)(0));
            const double score =
                (den == 0.0) ? std::numeric_limits<double>::infinity() : num / den;
            if (score > best_score) {
                best_score = score;
                best = static_cast<int>(c);
            }
        }
        const BeamformingVector bf = partial_csi_direction(chan, geo);
        const VecC expected = steering_vector(geo, chan.components[best].dir);
        CHECK((bf.b - expected).norm() <= 1e-14);
    }
}
