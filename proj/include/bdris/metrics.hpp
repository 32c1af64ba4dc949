// SPDX-License-Identifier: Apache-2.0
//
// Scalar figures of merit: amplitude-variation statistics of the feed
// channel, closed-form SNR expressions and gain bounds, effective
// channels through a configured surface, and far-field beam-pattern
// directivity metrics.

#pragma once

#include "bdris/geometry.hpp"
#include "bdris/ris_config.hpp"
#include "bdris/types.hpp"

namespace bdris {

struct CavReport {
    double mean = 0.0;    // mean of the amplitudes
    double std_dev = 0.0; // population standard deviation
    double cav = 0.0;     // std_dev / mean
};

// Coefficient of amplitude variation of a set of channel magnitudes.
CavReport cav(const VecD& amplitudes);

// Guaranteed and asymptotic SNR gain (dB) of lossless joint amplitude-
// and-phase alignment over per-cell phase-only alignment, as functions
// of the feed-channel amplitude spread.
double gain_floor_db(double cav_value);
double gain_ceiling_db(double cav_value);

// End-to-end scalar channel h^T * Omega * g.
cd effective_channel(const VecC& h, const ScatteringMatrix& omega, const VecC& g);

// Received SNR P * |h_eff|^2 / noise (any consistent power unit).
double snr_linear(cd h_eff, double power, double noise_power);

// Best-case SNR numerators (common constants dropped, so ratios are
// exact): full alignment reaches ||h||^2 ||g||^2, per-cell phase-only
// alignment reaches (sum_m |h_m| |g_m|)^2, and per-group alignment
// reaches (sum_q ||h_q|| ||g_q||)^2.
double snr_bdris_closed_form(const VecC& h, const VecC& g);
double snr_drris_closed_form(const VecC& h, const VecC& g);
double snr_grouped_closed_form(const VecC& h, const VecC& g, const Grouping& grouping);

struct BeamPattern {
    VecD azimuth;          // export grid [rad]
    VecD elevation;        // export grid [rad]
    MatD gain;             // linear directivity, azimuth x elevation
    double ppd_dbi = 0.0;  // peak directivity over the export grid
    double hppd_dbi = 0.0; // directivity half a beamwidth off the peak
    double hpbw_deg = 0.0; // half-power width of the cut through the peak
    double peak_azimuth = 0.0;   // [rad]
    double peak_elevation = 0.0; // [rad]
};

// Far-field power pattern p = |sqrt(M) a(dir)^T zeta|^2 of an effective
// transmit vector, normalized to full-sphere directivity by hemisphere
// quadrature (the array radiates into the front hemisphere only, so the
// sphere integral is twice the hemisphere's). Beamwidth is measured on
// the 1-degree elevation cut through the peak with half-power crossings
// interpolated in dB.
BeamPattern beam_pattern(const VecC& zeta, const ArrayGeometry& geo, const VecD& azimuth_grid,
                         const VecD& elevation_grid);

// Default export grids: azimuth -180..180 deg, elevation 0..90 deg, both
// in 1-degree steps.
BeamPattern beam_pattern(const VecC& zeta, const ArrayGeometry& geo);

} // namespace bdris
