// SPDX-License-Identifier: Apache-2.0

#include "bdris/eval.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "bdris/metrics.hpp"

namespace bdris {

namespace {

// Trial streams: channel draws and noise/symbol draws come from disjoint
// stream-id halves so adding noise never perturbs the channel sequence.
constexpr std::uint64_t kNoiseStreamBit = 1ULL << 63;

int gray_label(int i) { return i ^ (i >> 1); }

} // namespace

std::vector<cd> psk_constellation(int order) {
    if (order < 2 || (order & (order - 1)) != 0) {
        throw std::invalid_argument("constellation order must be a power of two, at least 2");
    }
    std::vector<cd> s(order);
    for (int i = 0; i < order; ++i) {
        const double phase = 2.0 * kPi * i / order;
        s[i] = cd(std::cos(phase), std::sin(phase));
    }
    return s;
}

int bit_differences(int i, int j) {
    return std::popcount(static_cast<unsigned>(gray_label(i) ^ gray_label(j)));
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

int ml_detect(cd y, cd h_eff, double power, const std::vector<cd>& constellation) {
    if (constellation.empty()) throw std::invalid_argument("empty constellation");
    const cd scale = std::sqrt(power) * h_eff;
    int best = 0;
    double best_dist = std::norm(y - scale * constellation[0]);
    for (std::size_t i = 1; i < constellation.size(); ++i) {
        const double dist = std::norm(y - scale * constellation[i]);
        if (dist < best_dist) {
            best_dist = dist;
            best = static_cast<int>(i);
        }
    }
    return best;
}

double union_bound_ber(const std::vector<cd>& constellation, double amp) {
    const int k = static_cast<int>(constellation.size());
    const double bits = std::log2(static_cast<double>(k));
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            const double dist = std::abs(constellation[i] - constellation[j]);
            sum += bit_differences(i, j) * q_function(dist * amp / std::sqrt(2.0));
        }
    }
    return sum / (k * bits);
}

RisUeChannel draw_channel(const LinkSetup& setup, std::uint64_t seed, std::uint64_t trial) {
    Rng rng(seed, trial);
    return sample_ris_ue_channel(setup.geo, setup.channel, setup.scenario, rng);
}

BeamformingVector target_vector(const LinkSetup& setup, const RisUeChannel& chan) {
    switch (setup.csi) {
        case CsiMode::FullCsi:
            return dominant_eigenmode(chan.h);
        case CsiMode::CodebookFeedback:
            return select_codeword(dominant_eigenmode(chan.h).b, setup.codebook);
        case CsiMode::AngularSelection:
            return partial_csi_direction(chan, setup.geo);
    }
    throw std::invalid_argument("unknown CSI mode");
}

cd effective_channel_bd(const VecC& h, const VecC& g, const VecC& b, const Grouping& grouping) {
    cd sum(0.0, 0.0);
    for (const auto& idx : grouping.groups) {
        cd hb(0.0, 0.0);
        double gq = 0.0, bq = 0.0;
        for (int i : idx) {
            hb += h(i) * b(i);
            gq += std::norm(g(i));
            bq += std::norm(b(i));
        }
        if (bq == 0.0) throw std::invalid_argument("target sub-vector of a group is all zero");
        sum += std::sqrt(gq) * hb / std::sqrt(bq);
    }
    return sum;
}

cd effective_channel_dris(const VecC& h, const VecC& g, const VecC& b) {
    cd sum(0.0, 0.0);
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        const double phase = (b(i) == cd(0.0, 0.0)) ? 0.0 : std::arg(b(i));
        sum += h(i) * std::abs(g(i)) * std::exp(cd(0.0, phase));
    }
    return sum;
}

cd effective_channel_active(const VecC& h, const VecC& b) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(h.size()));
    cd sum(0.0, 0.0);
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        const double phase = (b(i) == cd(0.0, 0.0)) ? 0.0 : std::arg(b(i));
        sum += h(i) * scale * std::exp(cd(0.0, phase));
    }
    return sum;
}

cd effective_channel_for(Architecture arch, const LinkSetup& setup, const VecC& h, const VecC& b) {
    switch (arch) {
        case Architecture::Active:
            return effective_channel_active(h, b);
        case Architecture::Dris:
            return effective_channel_dris(h, setup.g, b);
        case Architecture::BdFull: {
            Grouping full;
            full.group_count = 1;
            full.groups.resize(1);
            full.groups[0].resize(h.size());
            for (Eigen::Index i = 0; i < h.size(); ++i) full.groups[0][i] = static_cast<int>(i);
            return effective_channel_bd(h, setup.g, b, full);
        }
        case Architecture::BdGroup:
            return effective_channel_bd(h, setup.g, b, setup.grouping);
    }
    throw std::invalid_argument("unknown architecture");
}

MeanResult achievable_rate_mc(const LinkSetup& setup, Architecture arch, double power_mw,
                              double noise_mw, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trial count must be at least 1");
    KahanSum sum, sum_sq;
    for (int t = 0; t < trials; ++t) {
        const RisUeChannel chan = draw_channel(setup, seed, static_cast<std::uint64_t>(t));
        const BeamformingVector target = target_vector(setup, chan);
        const cd h_eff = effective_channel_for(arch, setup, chan.h, target.b);
        const double rate = std::log2(1.0 + power_mw * std::norm(h_eff) / noise_mw);
        sum.add(rate);
        sum_sq.add(rate * rate);
    }
    MeanResult out;
    out.trials = trials;
    out.mean = sum.value() / trials;
    if (trials > 1) {
        const double var = (sum_sq.value() - trials * out.mean * out.mean) / (trials - 1);
        out.std_err = std::sqrt(std::max(var, 0.0) / trials);
    }
    return out;
}

AberPoint simulate_aber_point(const LinkSetup& setup, Architecture arch, double power_mw,
                              double noise_mw, const AberParams& params, std::uint64_t seed) {
    const std::vector<cd> constellation = psk_constellation(params.constellation_order);
    const int k = params.constellation_order;
    const int bits_per_symbol = static_cast<int>(std::log2(static_cast<double>(k)));
    const long long block_bits = static_cast<long long>(params.block_symbols) * bits_per_symbol;
    const double noise_std = std::sqrt(noise_mw);

    AberPoint point;
    KahanSum sum_sim, sum_sim_sq, sum_bound, sum_diff, sum_diff_sq;
    std::uint64_t trial = 0;
    while (point.bits < params.max_bits && point.errors < params.min_errors) {
        const RisUeChannel chan = draw_channel(setup, seed, trial);
        const BeamformingVector target = target_vector(setup, chan);
        const cd h_eff = effective_channel_for(arch, setup, chan.h, target.b);
        const double bound =
            union_bound_ber(constellation, std::sqrt(power_mw) * std::abs(h_eff) / noise_std);

        Rng noise_rng(seed, trial | kNoiseStreamBit);
        long long block_errors = 0;
        for (int s = 0; s < params.block_symbols; ++s) {
            const double u = noise_rng.uniform();
            const int tx = std::min(k - 1, static_cast<int>(u * k));
            const cd noise = noise_rng.cgauss(noise_mw);
            const cd y = std::sqrt(power_mw) * h_eff * constellation[tx] + noise;
            const int rx = ml_detect(y, h_eff, power_mw, constellation);
            block_errors += bit_differences(tx, rx);
        }

        const double block_ber = static_cast<double>(block_errors) / block_bits;
        sum_sim.add(block_ber);
        sum_sim_sq.add(block_ber * block_ber);
        sum_bound.add(bound);
        sum_diff.add(block_ber - bound);
        sum_diff_sq.add((block_ber - bound) * (block_ber - bound));
        point.errors += block_errors;
        point.bits += block_bits;
        ++trial;
    }

    point.blocks = static_cast<int>(trial);
    const double n = static_cast<double>(point.blocks);
    point.simulated = static_cast<double>(point.errors) / point.bits;
    point.bound = sum_bound.value() / n;
    if (point.blocks > 1) {
        const double mean_sim = sum_sim.value() / n;
        const double var_sim = (sum_sim_sq.value() - n * mean_sim * mean_sim) / (n - 1.0);
        point.std_err = std::sqrt(std::max(var_sim, 0.0) / n);
        const double mean_diff = sum_diff.value() / n;
        const double var_diff = (sum_diff_sq.value() - n * mean_diff * mean_diff) / (n - 1.0);
        point.paired_std_err = std::sqrt(std::max(var_diff, 0.0) / n);
    }
    return point;
}

std::vector<GainPoint> snr_gain_sweep(const ArrayGeometry& geo, const VecC& g,
                                      const ChannelParams& base,
                                      const std::vector<int>& cluster_counts,
                                      bool include_rayleigh, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("trial count must be at least 1");
    std::vector<GainPoint> points;

    auto finish = [&](const std::string& label, const KahanSum& sum, const KahanSum& sum_sq) {
        GainPoint p;
        p.label = label;
        p.gain_db = sum.value() / trials;
        if (trials > 1) {
            const double var = (sum_sq.value() - trials * p.gain_db * p.gain_db) / (trials - 1);
            p.std_err = std::sqrt(std::max(var, 0.0) / trials);
        }
        points.push_back(p);
    };

    for (int clusters : cluster_counts) {
        ChannelParams params = base;
        params.num_clusters = clusters;
        params.num_paths = 1;
        KahanSum sum, sum_sq;
        for (int t = 0; t < trials; ++t) {
            Rng rng(seed, static_cast<std::uint64_t>(t));
            const RisUeChannel chan = sample_ris_ue_channel(geo, params, Scenario::LosBlocked, rng);
            const double gain =
                lin2db(snr_bdris_closed_form(chan.h, g) / snr_drris_closed_form(chan.h, g));
            sum.add(gain);
            sum_sq.add(gain * gain);
        }
        finish(fmt::format("{}", clusters), sum, sum_sq);
    }

    if (include_rayleigh) {
        // Entrywise complex-Gaussian surrogate for asymptotically rich
        // scattering, at the per-path power of the clustered model.
        const double var = std::pow(10.0, -0.1 * path_loss_db(base.nlos, base.distance_m, 0.0));
        KahanSum sum, sum_sq;
        for (int t = 0; t < trials; ++t) {
            Rng rng(seed, static_cast<std::uint64_t>(t));
            VecC h(geo.size());
            for (int i = 0; i < geo.size(); ++i) h(i) = rng.cgauss(var);
            const double gain = lin2db(snr_bdris_closed_form(h, g) / snr_drris_closed_form(h, g));
            sum.add(gain);
            sum_sq.add(gain * gain);
        }
        finish("rayleigh", sum, sum_sq);
    }
    return points;
}

} // namespace bdris
