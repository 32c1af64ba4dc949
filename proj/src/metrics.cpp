// SPDX-License-Identifier: Apache-2.0

#include "bdris/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace bdris {

namespace {

// Far-field array factor power |sum_m zeta_m e^{j k.p_m}|^2, using the
// row/column separability of the planar layout so each direction costs
// M_x + M_y trig evaluations instead of M.
class PatternEvaluator {
  public:
    PatternEvaluator(const VecC& zeta, const ArrayGeometry& geo)
        : geo_(geo), z_(Eigen::Map<const MatC>(zeta.data(), geo.m_x_count, geo.m_y_count)),
          ax_(geo.m_x_count), ay_(geo.m_y_count) {}

    double power(double azimuth, double elevation) const {
        const double k0 = 2.0 * kPi / geo_.wavelength;
        const double st = std::sin(elevation);
        const double kx = k0 * st * std::cos(azimuth);
        const double ky = k0 * st * std::sin(azimuth);
        for (int ix = 0; ix < geo_.m_x_count; ++ix) {
            const double ph = kx * (ix * geo_.dx);
            ax_(ix) = cd(std::cos(ph), std::sin(ph));
        }
        for (int iy = 0; iy < geo_.m_y_count; ++iy) {
            const double ph = ky * (iy * geo_.dy);
            ay_(iy) = cd(std::cos(ph), std::sin(ph));
        }
        const cd af = ax_.cwiseProduct(z_ * ay_).sum();
        return std::norm(af);
    }

  private:
    const ArrayGeometry& geo_;
    Eigen::Map<const MatC> z_;
    mutable VecC ax_;
    mutable VecC ay_;
};

} // namespace

CavReport cav(const VecD& amplitudes) {
    if (amplitudes.size() == 0) throw std::invalid_argument("cav of an empty amplitude set");
    CavReport report;
    report.mean = amplitudes.mean();
    if (report.mean == 0.0) throw std::invalid_argument("cav undefined for zero mean amplitude");
    report.std_dev = std::sqrt((amplitudes.array() - report.mean).square().mean());
    report.cav = report.std_dev / report.mean;
    return report;
}

double gain_floor_db(double cav_value) { return lin2db(1.0 + cav_value * cav_value); }

double gain_ceiling_db(double cav_value) {
    return gain_floor_db(cav_value) + lin2db(4.0 / kPi);
}

cd effective_channel(const VecC& h, const ScatteringMatrix& omega, const VecC& g) {
    return h.cwiseProduct(omega.apply(g)).sum();
}

double snr_linear(cd h_eff, double power, double noise_power) {
    if (power <= 0.0 || noise_power <= 0.0) {
        throw std::invalid_argument("power and noise power must be positive");
    }
    return power * std::norm(h_eff) / noise_power;
}

double snr_bdris_closed_form(const VecC& h, const VecC& g) {
    return h.squaredNorm() * g.squaredNorm();
}

double snr_drris_closed_form(const VecC& h, const VecC& g) {
    const double s = h.cwiseAbs().cwiseProduct(g.cwiseAbs()).sum();
    return s * s;
}

double snr_grouped_closed_form(const VecC& h, const VecC& g, const Grouping& grouping) {
    double s = 0.0;
    for (const auto& idx : grouping.groups) {
        double hq = 0.0, gq = 0.0;
        for (int i : idx) {
            hq += std::norm(h(i));
            gq += std::norm(g(i));
        }
        s += std::sqrt(hq) * std::sqrt(gq);
    }
    return s * s;
}

BeamPattern beam_pattern(const VecC& zeta, const ArrayGeometry& geo, const VecD& azimuth_grid,
                         const VecD& elevation_grid) {
    if (zeta.size() != geo.size()) throw std::invalid_argument("effective vector length mismatch");
    if (zeta.norm() == 0.0) throw std::invalid_argument("beam pattern of an all-zero vector");
    if (azimuth_grid.size() == 0 || elevation_grid.size() == 0) {
        throw std::invalid_argument("beam pattern grids must be non-empty");
    }

    const PatternEvaluator eval(zeta, geo);

    // Radiated power over the front hemisphere by midpoint quadrature at
    // 0.5 degrees; the back hemisphere mirrors it, hence the factor 2 in
    // the directivity normalization below.
    const double step = deg2rad(0.5);
    KahanSum integral;
    for (int ie = 0; ie < 180; ++ie) {
        const double el = (ie + 0.5) * step;
        const double w = std::sin(el) * step * step;
        for (int ia = 0; ia < 720; ++ia) {
            const double az = -kPi + (ia + 0.5) * step;
            integral.add(eval.power(az, el) * w);
        }
    }
    const double norm = 4.0 * kPi / (2.0 * integral.value());

    BeamPattern bp;
    bp.azimuth = azimuth_grid;
    bp.elevation = elevation_grid;
    bp.gain.resize(azimuth_grid.size(), elevation_grid.size());
    Eigen::Index pk_a = 0, pk_e = 0;
    double pk = -1.0;
    for (Eigen::Index ia = 0; ia < azimuth_grid.size(); ++ia) {
        for (Eigen::Index ie = 0; ie < elevation_grid.size(); ++ie) {
            const double d = norm * eval.power(azimuth_grid(ia), elevation_grid(ie));
            bp.gain(ia, ie) = d;
            if (d > pk) {
                pk = d;
                pk_a = ia;
                pk_e = ie;
            }
        }
    }
    bp.ppd_dbi = lin2db(pk);
    bp.peak_azimuth = azimuth_grid(pk_a);
    bp.peak_elevation = elevation_grid(pk_e);

    // Elevation cut through the peak: t in [-90, 90] degrees, where the
    // negative half continues through broadside at the opposite azimuth.
    const double az_fwd = bp.peak_azimuth;
    const double az_back = (az_fwd <= 0.0) ? az_fwd + kPi : az_fwd - kPi;
    auto cut_gain = [&](double t_deg) {
        const double az = (t_deg >= 0.0) ? az_fwd : az_back;
        return norm * eval.power(az, deg2rad(std::abs(t_deg)));
    };
    std::vector<double> cut(181);
    int ipk = 0;
    for (int i = 0; i <= 180; ++i) {
        cut[i] = cut_gain(static_cast<double>(i - 90));
        if (cut[i] > cut[ipk]) ipk = i;
    }
    const double half = cut[ipk] / 2.0;

    // Half-power crossing on one side of the peak, interpolated in dB;
    // when the pattern never drops below half power the cut edge bounds
    // the width.
    auto crossing = [&](int dir) {
        int prev = ipk;
        for (int i = ipk + dir; i >= 0 && i <= 180; i += dir) {
            if (cut[i] <= half) {
                const double x0 = prev - 90, x1 = i - 90;
                const double y0 = lin2db(cut[prev]), y1 = lin2db(cut[i]);
                return x0 + (lin2db(half) - y0) * (x1 - x0) / (y1 - y0);
            }
            prev = i;
        }
        return static_cast<double>(dir > 0 ? 90 : -90);
    };
    const double right = crossing(+1);
    const double left = crossing(-1);
    bp.hpbw_deg = right - left;

    // Directivity half a (rounded) beamwidth off the peak along the cut.
    double t_half = (ipk - 90) + std::round(bp.hpbw_deg) / 2.0;
    if (t_half > 90.0) t_half = (ipk - 90) - std::round(bp.hpbw_deg) / 2.0;
    bp.hppd_dbi = lin2db(cut_gain(t_half));
    return bp;
}

BeamPattern beam_pattern(const VecC& zeta, const ArrayGeometry& geo) {
    VecD az(361), el(91);
    for (int i = 0; i < 361; ++i) az(i) = deg2rad(i - 180);
    for (int j = 0; j < 91; ++j) el(j) = deg2rad(j);
    return beam_pattern(zeta, geo, az, el);
}

} // namespace bdris
