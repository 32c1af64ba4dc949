// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "bdris/channel.hpp"
#include "bdris/geometry.hpp"
#include "bdris/metrics.hpp"
#include "bdris/ris_config.hpp"
#include "bdris/rng.hpp"
#include "bdris/types.hpp"

using namespace bdris;

namespace {

ArrayGeometry grid(int mx, int my) {
    const double lambda = 299792458.0 / 28e9;
    const double half = lambda / 2.0;
    return build_geometry(mx, my, half, half, half, lambda, half * half);
}

VecC random_vec(int m, std::uint64_t stream) {
    Rng rng(37, stream);
    VecC v(m);
    for (int i = 0; i < m; ++i) v(i) = rng.cgauss(1.0);
    return v;
}

double peak_relative_diff(const BeamPattern& a, const BeamPattern& b) {
    const double peak = a.gain.maxCoeff();
    return ((a.gain - b.gain).cwiseAbs().maxCoeff()) / peak;
}

} // namespace

TEST_CASE("amplitude variation uses the population spread") {
    VecD amps(2);
    amps << 1.0, 3.0;
    const CavReport rep = cav(amps);
    CHECK(rep.mean == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(rep.std_dev == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rep.cav == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("amplitude variation is zero for constant feeds and scale invariant") {
    const VecD flat = VecD::Constant(16, 0.7);
    CHECK(cav(flat).cav == doctest::Approx(0.0).epsilon(1e-14));

    const ArrayGeometry geo = grid(10, 10);
    const VecD amps = bs_ris_channel(geo).cwiseAbs();
    const CavReport one = cav(amps);
    const CavReport scaled = cav((amps * 2.0).eval());
    CHECK(one.cav == doctest::Approx(scaled.cav).epsilon(1e-12));
    // Reference operating point: strongly tapered feed illumination.
    CHECK(one.cav == doctest::Approx(1.246625).epsilon(1e-4));
}

TEST_CASE("gain floor and ceiling bracket the passive advantage") {
    CHECK(gain_floor_db(0.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(gain_floor_db(1.0) == doctest::Approx(10.0 * std::log10(2.0)).epsilon(1e-12));
    // The ceiling adds the constant co-phasing penalty factor 4/pi.
    const double gap = 10.0 * std::log10(4.0 / kPi);
    CHECK(gain_ceiling_db(0.7) - gain_floor_db(0.7) == doctest::Approx(gap).epsilon(1e-12));
    CHECK(gain_floor_db(1.246625) == doctest::Approx(4.0723).epsilon(1e-3));
    CHECK(gain_ceiling_db(1.246625) == doctest::Approx(5.1214).epsilon(1e-3));
}

TEST_CASE("closed-form receive powers obey the architecture ordering") {
    const ArrayGeometry geo = grid(6, 5);
    const int m = geo.size();
    const VecC h = random_vec(m, 1);
    const VecC g = random_vec(m, 2);

    const double bd = snr_bdris_closed_form(h, g);
    const double d = snr_drris_closed_form(h, g);
    CHECK(bd == doctest::Approx(h.squaredNorm() * g.squaredNorm()).epsilon(1e-12));
    CHECK(bd >= d * (1.0 - 1e-12));

    const Grouping full = make_grouping(geo, 1, GroupingStrategy::Linear);
    const Grouping mid = make_grouping(geo, 5, GroupingStrategy::Linear);
    const Grouping cells = make_grouping(geo, m, GroupingStrategy::Linear);
    const double grouped_full = snr_grouped_closed_form(h, g, full);
    const double grouped_mid = snr_grouped_closed_form(h, g, mid);
    const double grouped_cells = snr_grouped_closed_form(h, g, cells);
    CHECK(grouped_full == doctest::Approx(bd).epsilon(1e-12));
    CHECK(grouped_cells == doctest::Approx(d).epsilon(1e-12));
    CHECK(bd >= grouped_mid * (1.0 - 1e-12));
    CHECK(grouped_mid >= d * (1.0 - 1e-12));
}

TEST_CASE("equal-amplitude channels close the architecture gap") {
    const int m = 24;
    Rng rng(41, 0);
    VecC h(m), g(m);
    for (int i = 0; i < m; ++i) {
        h(i) = std::polar(1.0, rng.uniform(-kPi, kPi));
        g(i) = std::polar(1.0, rng.uniform(-kPi, kPi));
    }
    CHECK(snr_bdris_closed_form(h, g) ==
          doctest::Approx(snr_drris_closed_form(h, g)).epsilon(1e-12));
}

TEST_CASE("constant-modulus user channel maps the gap onto the feed variation") {
    // When only the feed amplitudes vary, the block-unitary advantage over
    // per-cell phase tuning is exactly the statistical floor value.
    const ArrayGeometry geo = grid(10, 10);
    const VecC g = bs_ris_channel(geo);
    Rng rng(43, 0);
    VecC h(geo.size());
    for (int i = 0; i < geo.size(); ++i) h(i) = std::polar(1.0, rng.uniform(-kPi, kPi));
    const double ratio_db =
        lin2db(snr_bdris_closed_form(h, g) / snr_drris_closed_form(h, g));
    CHECK(ratio_db == doctest::Approx(gain_floor_db(cav(g.cwiseAbs()).cav)).epsilon(1e-12));
}

TEST_CASE("scattered effective channel matches the dense product") {
    const ArrayGeometry geo = grid(4, 3);
    const VecC g = random_vec(geo.size(), 5);
    const VecC b = random_vec(geo.size(), 6);
    const VecC h = random_vec(geo.size(), 7);
    const Grouping grouping = make_grouping(geo, 3, GroupingStrategy::Linear);
    const ScatteringMatrix omega = configure_bdris(g, b, grouping);
    const cd via_fn = effective_channel(h, omega, g);
    const cd via_dense = (h.transpose() * omega.dense() * g)(0);
    CHECK(std::abs(via_fn - via_dense) <= 1e-12 * std::abs(via_dense));
}

TEST_CASE("snr converts received power against noise") {
    CHECK(snr_linear(cd(3.0, 4.0), 2.0, 0.5) == doctest::Approx(100.0).epsilon(1e-12));
    CHECK_THROWS_AS(snr_linear(cd(1.0, 0.0), 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(snr_linear(cd(1.0, 0.0), 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("single-cell pattern is isotropic with a mirrored back lobe") {
    const ArrayGeometry geo = grid(1, 1);
    const VecC zeta = VecC::Constant(1, cd(1.0, 0.0));
    const BeamPattern bp = beam_pattern(zeta, geo);
    // A constant pattern over both hemispheres normalizes to 0 dBi, up to
    // quadrature error in the radiated-power integral.
    CHECK(std::abs(bp.ppd_dbi) <= 1e-3);
    const double peak = bp.gain.maxCoeff();
    const double trough = bp.gain.minCoeff();
    CHECK(peak == doctest::Approx(trough).epsilon(1e-9));
    // The cut never drops below half power, so the edges bound the width.
    CHECK(bp.hpbw_deg == doctest::Approx(180.0).epsilon(1e-9));
    CHECK_THROWS_AS(beam_pattern(VecC::Zero(1), geo), std::invalid_argument);
}

TEST_CASE("broadside array pattern peaks at zero with the expected width") {
    const ArrayGeometry geo = grid(10, 10);
    const VecC b = steering_vector(geo, Direction{0.0, 0.0});
    const BeamPattern bp = beam_pattern(active_array_weights(b), geo);
    CHECK(bp.peak_elevation == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(bp.ppd_dbi == doctest::Approx(21.55).epsilon(0.03));
    CHECK(bp.hpbw_deg == doctest::Approx(10.2).epsilon(0.05));
    CHECK(bp.hppd_dbi < bp.ppd_dbi);
}

TEST_CASE("block-unitary and active patterns coincide for a broadside target") {
    const ArrayGeometry geo = grid(4, 4);
    const VecC g = bs_ris_channel(geo);
    const VecC b = steering_vector(geo, Direction{0.0, 0.0});
    const Grouping full = make_grouping(geo, 1, GroupingStrategy::Linear);
    const BeamPattern bd = beam_pattern(configure_bdris(g, b, full).apply(g), geo);
    const BeamPattern act = beam_pattern(active_array_weights(b), geo);
    CHECK(peak_relative_diff(bd, act) <= 1e-9);
}
