// SPDX-License-Identifier: Apache-2.0
//
// Scattering-matrix synthesis for the passive surface: cell grouping
// strategies, the Takagi factorization kernel, block-unitary and
// diagonal-phase configurations, the active-array benchmark weights,
// and circuit/algorithm complexity accounting.

#pragma once

#include <vector>

#include "bdris/geometry.hpp"
#include "bdris/types.hpp"

namespace bdris {

enum class GroupingStrategy {
    Linear,          // consecutive cell indices
    Rows,            // whole rows per group
    MirrorSymmetric, // pairs of half-groups mirrored through the array center line
};

struct Grouping {
    GroupingStrategy strategy = GroupingStrategy::Linear;
    int group_count = 1;
    std::vector<std::vector<int>> groups; // disjoint cover of {0..M-1}, equal sizes
};

// Partitions the cells into `group_count` equal groups. MirrorSymmetric
// splits each group of the half-count Linear partition into two
// equal-radius halves (left columns and their reflected partners), so it
// needs an even column count and base groups made of whole rows.
Grouping make_grouping(const ArrayGeometry& geo, int group_count, GroupingStrategy strategy);

struct TakagiResult {
    MatC q;     // unitary factor
    VecD sigma; // singular values, non-increasing
};

// Factorization A = Q diag(sigma) Q^T of a complex symmetric matrix.
// Built on the SVD with a per-column phase correction; clusters of
// repeated singular values get a joint block correction instead, which
// the one-column rule cannot provide.
TakagiResult takagi(const MatC& a, double tol = 1e-8);

enum class ScatteringKind {
    BlockUnitary,  // symmetric unitary block per group
    DiagonalPhase, // unit-modulus phase per cell
};

struct ScatteringMatrix {
    ScatteringKind kind = ScatteringKind::BlockUnitary;
    Grouping grouping;
    std::vector<MatC> blocks; // one square block per group
    int dim = 0;

    VecC apply(const VecC& x) const; // y = Omega * x
    MatC dense() const;              // assembled M x M matrix
};

// Per group: steers the group's share of the feed channel g onto the
// target direction b by a symmetric unitary block, giving
// |b_q^H (Omega_q g_q)| = ||b_q|| ||g_q|| (amplitude-lossless alignment).
// Residual per-group phases are folded out only if their spread is
// measurable, keeping cross-group contributions coherent.
ScatteringMatrix configure_bdris(const VecC& g, const VecC& b, const Grouping& grouping);

// Per-cell phase alignment: entry m applies exp(j(arg b_m - arg g_m)).
ScatteringMatrix configure_dris(const VecC& g, const VecC& b);

// Phase-only transmit weights for the active-array benchmark: entrywise
// exp(j arg(v1)), each of modulus 1 (zero entries map to phase 0).
VecC active_array_weights(const VecC& v1);

enum class Architecture {
    Active,
    Dris,
    BdFull,
    BdGroup,
};

struct ComplexityReport {
    Architecture architecture = Architecture::Active;
    long long circuit_count = 0;  // tunable circuit elements
    double algo_flop_model = 0.0; // configuration work scaling model
};

// Circuit-element counts per architecture and the scaling model of the
// configuration algorithm's cost (cubic per group for block synthesis,
// linear for per-cell phase tuning).
ComplexityReport circuit_complexity(Architecture architecture, int m, int group_count = 1);

} // namespace bdris
