// Kernel cut-off operator V(phi) on line symbols, its holomorphic strip
// extension via phi_delta(theta) = e^{theta delta} phi(theta), the asymptotic
// expansion check, and strip-membership verification.
//
// Line symbols are kept in separable form  a(rho) = sum_m g_m(rho) A_m  with
// scalar profiles g_m and constant mode-matrix factors A_m; V(phi) acts on each
// profile through its theta-kernel, which keeps the cut-off exact per term.
#pragma once

#include "mellinlab/fft.hpp"
#include "mellinlab/report.hpp"
#include "mellinlab/scales.hpp"

namespace mellinlab::kco {

struct CutoffFunction {
    enum class Shape { Bump, FlatTop } shape = Shape::Bump;
    double support = 1.0;   // T; supported on [shift - T, shift + T]
    double flat_eps = 0.1;  // FlatTop: ramp fraction of the support
    double shift = 0.0;     // center offset (asymmetric cutoffs); |shift| < T
    double tilt = 0.0;      // extra factor e^{theta * tilt} (phi_delta weights)

    // Bump: exp(-1/(1 - ((theta-shift)/T)^2)); FlatTop: 1 on the inner (1-eps)
    // fraction, smoothstep ramp to 0 at the edge.  Normalized so phi(0) = 1.
    double operator()(double theta) const;
    // D^k phi(0) by 8th-order central differences
    double derivative_at_zero(int k) const;
};

struct ThetaGrid {
    double theta_max = 8.0;
    int n = 8192;
    fft::LineGrid line() const { return {-theta_max, 2.0 * theta_max / n, n}; }
};

struct LineSymbol {
    double order = 0.0;
    ScaleSpec domain;
    ScaleSpec codomain;
    struct Term {
        std::function<cd(double rho)> profile;
        Mat factor;
    };
    std::vector<Term> terms;

    Mat eval(double rho) const;
    Mat derivative(double rho, int k, double step = 0.25) const;  // d^k/drho^k
};

LineSymbol constant_line(const ScaleSpec& scale, cd value);
LineSymbol bracket_line(const ScaleSpec& scale, double mu);            // <rho>^mu id
LineSymbol reduction_line(const OrderReducingFamily& fam, double mu);  // diag <rho,k>^mu
LineSymbol linear_line(const ScaleSpec& scale, cd a0, cd a1);          // (a0 + a1 rho) id
LineSymbol gaussian_line(const ScaleSpec& scale);                      // e^{-rho^2} id

struct HoloSymbol {
    double order = 0.0;
    ScaleSpec domain;
    ScaleSpec codomain;
    CutoffFunction phi;
    ThetaGrid tgrid;
    double delta_max = 3.0;  // configured strip half-width
    struct Term {
        std::vector<cd> kernel;  // phi(theta) * k_a(theta) on the theta grid
        Mat factor;
    };
    std::vector<Term> terms;

    // evaluation at zeta = rho + i delta; delta = 0 is the kernel cut-off line value
    Mat eval(cd zeta) const;
    Mat eval_line(double rho) const { return eval(cd(rho, 0.0)); }
    // theta-kernel value at an off-grid point (cubic interpolation), summed over terms
    // as a scalar; valid when all factors are 1x1
    cd scalar_kernel_at(double theta) const;
};

// V(phi) a as a holomorphic symbol; errors when the theta-kernel has not decayed
// at the grid edge (relative edge-cell mass > 1e-8).
HoloSymbol kernel_cutoff(const CutoffFunction& phi, const LineSymbol& a,
                         const ThetaGrid& tg = {});

Mat evaluate_strip(const HoloSymbol& h, cd zeta);

struct RemainderFit {
    double exponent = 0.0;
    double target = 0.0;
    bool pass = false;
    bool at_floor = false;
};

// Decay exponent of V(phi)a - sum_{k<K} ((-1)^k/k!) D^k phi(0) d^k_rho a along
// the line; pass iff exponent <= mu - K + 0.3 (or the remainder sits at the
// rounding floor, as for polynomial symbols with exact expansions).
RemainderFit asymptotic_remainder(const CutoffFunction& phi, const LineSymbol& a, int K,
                                  const std::vector<double>& rho_grid, const ThetaGrid& tg = {});

// Order-mu seminorms of the line restrictions h|_{Im zeta = delta}, uniformly
// over sampled delta in the interval.
Report verify_strip_membership(const HoloSymbol& h, std::pair<double, double> delta_interval,
                               const OrderReducingFamily& dom_fam,
                               const OrderReducingFamily& cod_fam, int k_budget = 1);

}  // namespace mellinlab::kco
