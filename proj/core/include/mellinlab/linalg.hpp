// Dense operator-norm and kernel-counting helpers.
#pragma once

#include "mellinlab/types.hpp"

namespace mellinlab {

// Spectral norm. Diagonal operators are passed as vectors (exact max); general
// matrices use power iteration on A^H A to 1e-10 relative, with an SVD fallback
// for small or slowly converging cases.
double op_norm(const Vec& diag);
double op_norm(const Mat& a);

// Smallest singular value.
double min_singular_value(const Mat& a);

// Number of singular values below thresh_rel * sigma_max.
int numerical_nullity(const Mat& a, double thresh_rel);

}  // namespace mellinlab
