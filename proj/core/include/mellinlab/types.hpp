// Common scalar/matrix aliases and the bracket weights used throughout.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace mellinlab {

using cd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;

inline constexpr double pi = 3.14159265358979323846;

// Japanese bracket <x> = (1 + |x|^2)^{1/2}, given |x|^2.
inline double bracket_from_sq(double sumsq) { return std::sqrt(1.0 + sumsq); }

inline double bracket(double x) { return bracket_from_sq(x * x); }

inline double bracket(const RVec& eta) { return bracket_from_sq(eta.squaredNorm()); }

// <eta, k> = (1 + |eta|^2 + k^2)^{1/2}
inline double bracket(const RVec& eta, double k) {
    return bracket_from_sq(eta.squaredNorm() + k * k);
}

inline RVec eta1(double v) {
    RVec e(1);
    e[0] = v;
    return e;
}

// smoothstep: 0 for x<=0, 1 for x>=1, C^inf glue in between
inline double smoothstep(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

// cut-off function on the half axis: 1 on (0, 1/2], 0 on [2/3, inf)
inline double omega_cutoff(double r) {
    return 1.0 - smoothstep((r - 0.5) / (2.0 / 3.0 - 0.5));
}

}  // namespace mellinlab
