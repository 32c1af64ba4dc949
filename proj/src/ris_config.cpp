// SPDX-License-Identifier: Apache-2.0

#include "bdris/ris_config.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>
#include <fmt/format.h>

namespace bdris {

namespace {

// Joint real-orthogonal eigenbasis of two commuting real symmetric
// matrices: eigen-decompose the first, then re-diagonalize the second
// inside each repeated-eigenvalue subspace.
MatD joint_diag_commuting(const MatD& x, const MatD& y, double tol = 1e-9) {
    Eigen::SelfAdjointEigenSolver<MatD> es(x);
    VecD w = es.eigenvalues();
    MatD o = es.eigenvectors();
    const int n = static_cast<int>(w.size());
    int i = 0;
    while (i < n) {
        int j = i + 1;
        while (j < n && std::abs(w(j) - w(i)) <= tol * std::max(1.0, std::abs(w(i)))) ++j;
        if (j - i > 1) {
            const MatD sub = o.middleCols(i, j - i);
            Eigen::SelfAdjointEigenSolver<MatD> es2(MatD(sub.transpose() * y * sub));
            o.middleCols(i, j - i) = sub * es2.eigenvectors();
        }
        i = j;
    }
    return o;
}

} // namespace

Grouping make_grouping(const ArrayGeometry& geo, int group_count, GroupingStrategy strategy) {
    const int m = geo.size();
    if (group_count < 1 || m % group_count != 0) {
        throw std::invalid_argument(
            fmt::format("group count {} must divide the cell count {}", group_count, m));
    }
    const int per_group = m / group_count;

    Grouping grouping;
    grouping.strategy = strategy;
    grouping.group_count = group_count;
    grouping.groups.resize(group_count);

    switch (strategy) {
        case GroupingStrategy::Linear:
            for (int q = 0; q < group_count; ++q) {
                grouping.groups[q].reserve(per_group);
                for (int i = 0; i < per_group; ++i) grouping.groups[q].push_back(q * per_group + i);
            }
            break;
        case GroupingStrategy::Rows:
            if (geo.m_y_count % group_count != 0) {
                throw std::invalid_argument(
                    fmt::format("row grouping needs the group count {} to divide the row count {}",
                                group_count, geo.m_y_count));
            }
            // Whole consecutive rows; identical to Linear at these sizes,
            // kept distinct so intent is visible in configs and outputs.
            for (int q = 0; q < group_count; ++q) {
                grouping.groups[q].reserve(per_group);
                for (int i = 0; i < per_group; ++i) grouping.groups[q].push_back(q * per_group + i);
            }
            break;
        case GroupingStrategy::MirrorSymmetric: {
            if (group_count % 2 != 0) {
                throw std::invalid_argument("mirror-symmetric grouping needs an even group count");
            }
            if (geo.m_x_count % 2 != 0) {
                throw std::invalid_argument("mirror-symmetric grouping needs an even column count");
            }
            const int base_size = 2 * per_group;
            if (base_size % geo.m_x_count != 0) {
                throw std::invalid_argument(fmt::format(
                    "mirror-symmetric grouping needs whole rows per pair: {} groups over {} cells "
                    "leaves {} cells per pair, not a multiple of the row length {}",
                    group_count, m, base_size, geo.m_x_count));
            }
            const int half_x = geo.m_x_count / 2;
            for (int pair = 0; pair < group_count / 2; ++pair) {
                auto& left = grouping.groups[2 * pair];
                auto& right = grouping.groups[2 * pair + 1];
                left.reserve(per_group);
                right.reserve(per_group);
                for (int i = 0; i < base_size; ++i) {
                    const int cell = pair * base_size + i;
                    const int ix = cell % geo.m_x_count;
                    const int iy = cell / geo.m_x_count;
                    if (ix < half_x) {
                        left.push_back(cell);
                        // Reflected partner: same row, mirrored column, so
                        // both halves share one distance multiset.
                        right.push_back(iy * geo.m_x_count + (geo.m_x_count - 1 - ix));
                    }
                }
            }
            break;
        }
    }
    return grouping;
}

TakagiResult takagi(const MatC& a, double tol) {
    const int n = static_cast<int>(a.rows());
    if (a.cols() != n) throw std::invalid_argument("takagi input must be square");
    const double scale = a.norm();
    if ((a - a.transpose()).norm() > 1e-9 * std::max(scale, 1e-300)) {
        throw std::invalid_argument("takagi input must be complex symmetric");
    }

    Eigen::JacobiSVD<MatC> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const MatC& u = svd.matrixU();
    const MatC& v = svd.matrixV();
    const VecD& s = svd.singularValues();

    TakagiResult out;
    out.sigma = s;
    out.q = u;
    const double smax = (n > 0) ? s(0) : 0.0;

    int i = 0;
    while (i < n) {
        int j = i + 1;
        while (j < n && (s(i) - s(j)) <= tol * std::max(smax, 1e-300)) ++j;
        if (s(i) <= tol * std::max(smax, 1e-300)) {
            // Null space of A: any unitary completion works, keep U's.
        } else if (j - i == 1) {
            const cd nu = u.col(i).dot(v.col(i).conjugate()); // u_i^H conj(v_i)
            out.q.col(i) = u.col(i) * std::exp(cd(0.0, std::arg(nu) / 2.0));
        } else {
            // Repeated singular value: the coupling of the two SVD bases
            // is a symmetric unitary block, not a diagonal of phases, so
            // take its own "matrix square root of phases" jointly.
            const MatC z = u.middleCols(i, j - i).adjoint() * v.middleCols(i, j - i).conjugate();
            MatD x = z.real();
            MatD y = z.imag();
            x = ((x + x.transpose()) / 2.0).eval();
            y = ((y + y.transpose()) / 2.0).eval();
            const MatD o = joint_diag_commuting(x, y);
            const VecD lx = (o.transpose() * x * o).diagonal();
            const VecD ly = (o.transpose() * y * o).diagonal();
            MatC r = MatC::Zero(j - i, j - i);
            for (int k = 0; k < j - i; ++k) {
                const double theta = std::atan2(ly(k), lx(k));
                r.col(k) = o.col(k) * std::exp(cd(0.0, theta / 2.0));
            }
            out.q.middleCols(i, j - i) = u.middleCols(i, j - i) * r;
        }
        i = j;
    }
    return out;
}

VecC ScatteringMatrix::apply(const VecC& x) const {
    if (static_cast<int>(x.size()) != dim) {
        throw std::invalid_argument("scattering matrix and vector dimensions disagree");
    }
    VecC y = VecC::Zero(dim);
    for (std::size_t q = 0; q < grouping.groups.size(); ++q) {
        const auto& idx = grouping.groups[q];
        VecC sub(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) sub(i) = x(idx[i]);
        const VecC mapped = blocks[q] * sub;
        for (std::size_t i = 0; i < idx.size(); ++i) y(idx[i]) = mapped(i);
    }
    return y;
}

MatC ScatteringMatrix::dense() const {
    MatC omega = MatC::Zero(dim, dim);
    for (std::size_t q = 0; q < grouping.groups.size(); ++q) {
        const auto& idx = grouping.groups[q];
        for (std::size_t r = 0; r < idx.size(); ++r) {
            for (std::size_t c = 0; c < idx.size(); ++c) {
                omega(idx[r], idx[c]) = blocks[q](r, c);
            }
        }
    }
    return omega;
}

ScatteringMatrix configure_bdris(const VecC& g, const VecC& b, const Grouping& grouping) {
    const int m = static_cast<int>(g.size());
    if (b.size() != m) throw std::invalid_argument("feed channel and target dimensions disagree");

    ScatteringMatrix omega;
    omega.kind = ScatteringKind::BlockUnitary;
    omega.grouping = grouping;
    omega.dim = m;
    omega.blocks.resize(grouping.groups.size());

    std::vector<double> psis(grouping.groups.size());
    for (std::size_t q = 0; q < grouping.groups.size(); ++q) {
        const auto& idx = grouping.groups[q];
        VecC gq(idx.size()), bq(idx.size());
        for (std::size_t i = 0; i < idx.size(); ++i) {
            gq(i) = g(idx[i]);
            bq(i) = b(idx[i]);
        }
        if (gq.norm() == 0.0 || bq.norm() == 0.0) {
            throw std::invalid_argument(
                fmt::format("group {} has an all-zero channel or target sub-vector", q));
        }
        const VecC u = gq / gq.norm();
        const VecC v = bq / bq.norm();
        MatC a = v * u.adjoint();
        a = (a + a.transpose()).eval();
        const TakagiResult tk = takagi(a);
        omega.blocks[q] = tk.q * tk.q.transpose();
        psis[q] = std::arg(v.dot(omega.blocks[q] * gq));
    }

    // Generic inputs land every group at zero residual phase; fold the
    // phases out only when a measurable spread would let cross-group
    // contributions combine incoherently.
    double spread = 0.0;
    for (double psi : psis) {
        spread = std::max(spread, std::abs(std::arg(std::exp(cd(0.0, psi - psis[0])))));
    }
    if (spread > 1e-6) {
        for (std::size_t q = 0; q < omega.blocks.size(); ++q) {
            omega.blocks[q] *= std::exp(cd(0.0, -psis[q]));
        }
    }
    return omega;
}

ScatteringMatrix configure_dris(const VecC& g, const VecC& b) {
    const int m = static_cast<int>(g.size());
    if (b.size() != m) throw std::invalid_argument("feed channel and target dimensions disagree");

    ScatteringMatrix omega;
    omega.kind = ScatteringKind::DiagonalPhase;
    omega.grouping.strategy = GroupingStrategy::Linear;
    omega.grouping.group_count = m;
    omega.grouping.groups.resize(m);
    omega.dim = m;
    omega.blocks.resize(m);
    for (int i = 0; i < m; ++i) {
        if (g(i) == cd(0.0, 0.0)) {
            throw std::invalid_argument(
                fmt::format("feed channel entry {} is zero, its phase is undefined", i));
        }
        omega.grouping.groups[i] = {i};
        omega.blocks[i] = MatC::Constant(1, 1, std::exp(cd(0.0, std::arg(b(i)) - std::arg(g(i)))));
    }
    return omega;
}

VecC active_array_weights(const VecC& v1) {
    VecC w(v1.size());
    for (Eigen::Index i = 0; i < v1.size(); ++i) {
        const double phase = (v1(i) == cd(0.0, 0.0)) ? 0.0 : std::arg(v1(i));
        w(i) = std::exp(cd(0.0, phase));
    }
    return w;
}

ComplexityReport circuit_complexity(Architecture architecture, int m, int group_count) {
    if (m < 1) throw std::invalid_argument("cell count must be at least 1");
    ComplexityReport report;
    report.architecture = architecture;
    const auto mm = static_cast<long long>(m);
    switch (architecture) {
        case Architecture::Active:
            report.circuit_count = mm;
            report.algo_flop_model = static_cast<double>(m);
            break;
        case Architecture::Dris:
            report.circuit_count = 3 * mm;
            report.algo_flop_model = static_cast<double>(m);
            break;
        case Architecture::BdFull:
            report.circuit_count = (2 * mm + 1) * mm;
            report.algo_flop_model = std::pow(static_cast<double>(m), 3);
            break;
        case Architecture::BdGroup:
            if (group_count < 1 || m % group_count != 0) {
                throw std::invalid_argument(fmt::format(
                    "group count {} must divide the cell count {}", group_count, m));
            }
            report.circuit_count = (2 * mm / group_count + 1) * mm;
            report.algo_flop_model =
                std::pow(static_cast<double>(m), 3) / (static_cast<double>(group_count) * group_count);
            break;
    }
    return report;
}

} // namespace bdris
