// SPDX-License-Identifier: Apache-2.0
//
// Common scalar/vector aliases used across the library.

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace bdris {

using cd = std::complex<double>;
using VecC = Eigen::VectorXcd;
using VecD = Eigen::VectorXd;
using MatC = Eigen::MatrixXcd;
using MatD = Eigen::MatrixXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSpeedOfLight = 299792458.0; // m/s

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

inline double db2lin(double db) { return std::pow(10.0, db / 10.0); }
inline double lin2db(double lin) { return 10.0 * std::log10(lin); }

// Compensated (Kahan) accumulator so Monte-Carlo reductions do not depend on
// summation order beyond the fixed trial ordering.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

} // namespace bdris
