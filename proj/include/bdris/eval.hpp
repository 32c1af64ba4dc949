// SPDX-License-Identifier: Apache-2.0
//
// Monte-Carlo evaluation: symbol transmission with ML detection, the
// union-bound error-rate oracle, achievable rate, and the SNR-gain scan
// over scattering richness. Trials derive their RNG streams from
// (master seed, trial index), so every architecture and sweep point
// sees the same channel set (paired comparisons by construction).

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bdris/channel.hpp"
#include "bdris/precoder.hpp"
#include "bdris/ris_config.hpp"
#include "bdris/rng.hpp"
#include "bdris/types.hpp"

namespace bdris {

enum class CsiMode {
    FullCsi = 1,          // dominant singular direction of the measured channel
    CodebookFeedback = 2, // best codeword index fed back losslessly
    AngularSelection = 3, // steer at the cleanest resolvable component
};

// Unit-energy PSK symbols, index i at angle 2*pi*i/order.
std::vector<cd> psk_constellation(int order);

// Number of differing bits between the Gray labels of two symbol indices.
int bit_differences(int i, int j);

// Gaussian tail probability Q(x).
double q_function(double x);

// ML symbol decision argmin_s |y - sqrt(power) * h_eff * s|^2; the
// lowest symbol index wins ties.
int ml_detect(cd y, cd h_eff, double power, const std::vector<cd>& constellation);

// Union bound on the bit error rate for one channel state, from the
// pairwise error probabilities weighted by Gray-label bit differences.
// amp = sqrt(power) * |h_eff| / noise_std.
double union_bound_ber(const std::vector<cd>& constellation, double amp);

// Everything fixed across trials for one evaluated link.
struct LinkSetup {
    ArrayGeometry geo;
    VecC g;                 // feed channel of the surface
    ChannelParams channel;
    Scenario scenario = Scenario::LosPresent;
    CsiMode csi = CsiMode::FullCsi;
    Codebook codebook;      // used only when csi == CodebookFeedback
    Grouping grouping;      // used only for the grouped architecture
};

// Channel realization for one trial, from the stream (seed, trial).
RisUeChannel draw_channel(const LinkSetup& setup, std::uint64_t seed, std::uint64_t trial);

// Beamforming target for the configured CSI mode.
BeamformingVector target_vector(const LinkSetup& setup, const RisUeChannel& chan);

// Effective scalar channels of the configured architectures, via the
// amplitude-lossless alignment identities their configurations achieve
// (the assembled scattering matrices reproduce these to rounding; the
// test suite gates that equivalence).
cd effective_channel_bd(const VecC& h, const VecC& g, const VecC& b, const Grouping& grouping);
cd effective_channel_dris(const VecC& h, const VecC& g, const VecC& b);
cd effective_channel_active(const VecC& h, const VecC& b); // unit total transmit power

// Dispatch over the architecture enum (BdFull ignores the grouping).
cd effective_channel_for(Architecture arch, const LinkSetup& setup, const VecC& h, const VecC& b);

struct MeanResult {
    double mean = 0.0;
    double std_err = 0.0;
    int trials = 0;
};

// Ergodic rate E[log2(1 + power |h_eff|^2 / noise)] in bits per channel use.
MeanResult achievable_rate_mc(const LinkSetup& setup, Architecture arch, double power_mw,
                              double noise_mw, int trials, std::uint64_t seed);

struct AberParams {
    int constellation_order = 2;
    long long max_bits = 10000000;  // stop after this many simulated bits...
    long long min_errors = 100;     // ...or this many bit errors, whichever first
    int block_symbols = 2000;       // symbols per channel realization
};

struct AberPoint {
    double simulated = 0.0;      // bit errors / bits
    double bound = 0.0;          // union bound averaged over the same channels
    long long bits = 0;
    long long errors = 0;
    int blocks = 0;
    double std_err = 0.0;        // MC error of the simulated estimate
    double paired_std_err = 0.0; // MC error of (simulated - bound)
};

// Simulated error rate and its paired union bound at one power point.
AberPoint simulate_aber_point(const LinkSetup& setup, Architecture arch, double power_mw,
                              double noise_mw, const AberParams& params, std::uint64_t seed);

struct GainPoint {
    std::string label;     // cluster count or the Gaussian surrogate
    double gain_db = 0.0;  // mean over trials of 10*log10(SNR ratio)
    double std_err = 0.0;
};

// SNR gain of joint amplitude-and-phase alignment over phase-only
// alignment as scattering grows richer: single-path channels pin the
// guaranteed floor, an entrywise-Gaussian channel approaches the
// asymptotic ceiling. One path per cluster, direct path blocked.
std::vector<GainPoint> snr_gain_sweep(const ArrayGeometry& geo, const VecC& g,
                                      const ChannelParams& base,
                                      const std::vector<int>& cluster_counts,
                                      bool include_rayleigh, int trials, std::uint64_t seed);

} // namespace bdris
