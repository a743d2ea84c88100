// Least-squares fits used by the verification routines.
#pragma once

#include "mellinlab/types.hpp"

#include <span>

namespace mellinlab {

struct PowerFit {
    double c = 0.0;         // prefactor
    double exponent = 0.0;  // fitted e in y ~ c x^e
    double rel_residual = 0.0;
    int used = 0;  // samples above the floor
};

// Fit y ~ c * x^e by least squares in log-log coordinates.  Samples with
// y <= floor or x <= 0 are dropped.  If fewer than two samples survive the
// fit degenerates to exponent 0 with c = max y.
PowerFit fit_power_law(std::span<const double> x, std::span<const double> y, double floor = 0.0);

// Fit y ~ c * max(m, 1/m)^M over a grid of scale factors m > 0.
PowerFit fit_scaling_law(std::span<const double> m, std::span<const double> y);

}  // namespace mellinlab
