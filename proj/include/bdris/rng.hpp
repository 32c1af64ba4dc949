// SPDX-License-Identifier: Apache-2.0
//
// Deterministic per-stream random number generation.  Every Monte-Carlo
// trial owns an independent stream derived from (master seed, stream id),
// so results are bit-identical for a given seed regardless of execution
// order or thread count.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "bdris/types.hpp"

namespace bdris {

// splitmix64 step; used only to decorrelate (seed, stream) pairs.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

class Rng {
  public:
    Rng(std::uint64_t master_seed, std::uint64_t stream_id) {
        std::uint64_t s = master_seed;
        std::uint64_t a = splitmix64(s);
        s ^= stream_id * 0xda942042e4dd58b5ULL;
        std::uint64_t b = splitmix64(s);
        engine_.seed(a ^ (b + 0x9e3779b97f4a7c15ULL));
    }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }

    double normal(double mean = 0.0, double stddev = 1.0) {
        return std::normal_distribution<double>(mean, stddev)(engine_);
    }

    // CN(0, variance): circularly-symmetric complex Gaussian.
    cd cgauss(double variance) {
        double s = std::sqrt(variance / 2.0);
        return {normal(0.0, s), normal(0.0, s)};
    }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

} // namespace bdris
