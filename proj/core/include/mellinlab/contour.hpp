// Argument-principle machinery: winding along rectangle boundaries with
// adaptive phase tracking, zero location by rectangle subdivision plus Newton
// refinement, and Laurent-coefficient recovery by circular contour quadrature.
#pragma once

#include "mellinlab/types.hpp"

#include <functional>

namespace mellinlab::contour {

struct Rect {
    double re_lo = 0.0, re_hi = 0.0, im_lo = 0.0, im_hi = 0.0;
    double width() const { return re_hi - re_lo; }
    double height() const { return im_hi - im_lo; }
    cd center() const { return cd(0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)); }
    double diameter() const { return std::hypot(width(), height()); }
    bool contains(cd w) const {
        return w.real() >= re_lo && w.real() <= re_hi && w.imag() >= im_lo && w.imag() <= im_hi;
    }
};

using ScalarFn = std::function<cd(cd)>;
using MatFn = std::function<Mat(cd)>;

// Winding number of F along the rectangle boundary, counter-clockwise.  The
// boundary sampling is refined until consecutive phase increments stay below
// pi/2 (Nyquist-checked).  Throws if |F| dips below vanish_tol on the boundary.
int boundary_winding(const ScalarFn& f, const Rect& rect, double vanish_tol = 1e-13);

// Total (unwrapped) phase variation / 2pi of f along the vertical segment
// Re w = beta, Im w from im_lo to im_hi; also reports the rounding residue.
struct WindingResult {
    int winding = 0;
    double residue = 0.0;  // |total/2pi - winding|
    double min_abs = 0.0;  // min |f| along the segment
};
WindingResult line_winding(const ScalarFn& f, double beta, double im_lo, double im_hi,
                           int initial_samples = 512);

struct Zero {
    cd w;
    int multiplicity = 1;
};

// Zeros of an analytic function inside the rectangle: subdivision by winding
// count, then Newton refinement (multiplicity-adapted).  Points within
// exclusion_radius of an exclusion center are skipped.
std::vector<Zero> find_zeros(const ScalarFn& f, const Rect& rect,
                             const std::vector<cd>& exclusions = {},
                             double exclusion_radius = 1e-4, double target_diam = 1e-3);

// (1/2pi i) contour integral of g(w) (w - center)^k over the circle, trapezoid
// with `nodes` points, for k = 0..kmax; entry k approximates the Laurent
// coefficient of (w - center)^{-(k+1)}.
std::vector<Mat> laurent_coefficients(const MatFn& g, cd center, double radius, int kmax,
                                      int nodes = 256);

}  // namespace mellinlab::contour
