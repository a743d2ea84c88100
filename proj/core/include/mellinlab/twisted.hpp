// Group actions kappa_lambda u = sqrt(lambda) u(lambda .), edge spaces
// W^s(R, H^s) with kappa-twisted norms, twisted operator-valued seminorms, and
// Fourier-multiplier order-reducing families with their norm bounds.
//
// The inner Hilbert scale is realized as periodic band-limited functions on a
// uniform grid; rescaling uses trigonometric (spectral) interpolation of the
// periodic extension, which preserves L^2 unitarity to interpolation accuracy.
#pragma once

#include "mellinlab/fft.hpp"
#include "mellinlab/report.hpp"
#include "mellinlab/types.hpp"

#include <functional>

namespace mellinlab {

// Periodic uniform grid on [-L, L); H^s norms via the FFT line transforms.
struct LineScale {
    double half_length = 16.0;
    int n = 256;

    fft::LineGrid grid() const { return {-half_length, 2.0 * half_length / n, n}; }
    double x(int j) const { return grid().x(j); }
    double hs_norm(double s, const std::vector<cd>& u) const;
    double l2_norm(const std::vector<cd>& u) const { return hs_norm(0.0, u); }
    // value of the trigonometric interpolant at an arbitrary point
    cd interp(const std::vector<cd>& coeff, double x) const;
};

struct GroupAction {
    LineScale scale;
    bool trivial = false;  // identity action

    std::vector<cd> apply(double lambda, const std::vector<cd>& u) const;
    // matrix of kappa_lambda in value space
    Mat matrix(double lambda) const;
    // || kappa_lambda ||_{H^s -> H^s} on the grid realization
    double hs_op_norm(double lambda, double s) const;
};

struct KappaFit {
    double c = 0.0;
    double M = 0.0;
    double rel_residual = 0.0;
};

std::vector<cd> kappa_apply(const GroupAction& act, double lambda, const std::vector<cd>& u);

// Fit || kappa_lambda ||_{H^s} <= c max(lambda, 1/lambda)^{M(s)} over the grid.
KappaFit kappa_growth_fit(const GroupAction& act, double s, const std::vector<double>& lambda_grid);

// Edge functions u(x, t): rows indexed by the outer x-grid, columns by the inner grid.
struct EdgeFunction {
    Mat vals;
};

struct EdgeSpaceSpec {
    fft::LineGrid outer{-16.0, 0.25, 128};
    LineScale inner{16.0, 128};
    GroupAction action;

    // { int <xi>^{2s} || kappa^{-1}_{<xi>} u^(xi) ||_{H^s}^2 dxi / 2pi }^{1/2}
    double edge_norm(double s, const EdgeFunction& u) const;
};

// Scalar multiplier family p(xi, eta) acting on edge functions as Op_x(p)(eta).
struct MultiplierFamily {
    double order = 0.0;
    std::function<cd(double xi, const RVec& eta)> p;
};

MultiplierFamily bracket_multiplier(double mu);   // p = <xi, eta>^mu
MultiplierFamily constant_multiplier(cd value);

// Fourier-multiplier action of p at parameter eta; errors on a singular symbol.
EdgeFunction fourier_mult_apply(const EdgeSpaceSpec& spec, const MultiplierFamily& p,
                                const RVec& eta, const EdgeFunction& u);
MultiplierFamily invert_multiplier(const MultiplierFamily& p);

// Exact W^s -> W^{s-nu} operator norm of Op_x(p)(eta) on the grid realization
// (diagonal maximum over outer frequencies and inner modes).
double multiplier_op_norm(const EdgeSpaceSpec& spec, const MultiplierFamily& p, const RVec& eta,
                          double s, double nu);

// Twisted operator-valued symbol a(cov) on the inner space; cov is the covariable.
struct TwistedSymbol {
    double order = 0.0;
    std::function<Mat(const RVec& cov)> eval;
};

// sup over the covariable grid of <cov>^{-mu+|beta|} || kappa^{-1}_{<cov>}
// {D^beta a} kappa_{<cov>} ||; derivatives by central differences.
double twisted_seminorm(const GroupAction& act, const TwistedSymbol& a,
                        const std::vector<int>& beta, const std::vector<RVec>& cov_grid);

struct Nn9Config {
    std::vector<double> eta_magnitudes{1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
    std::vector<double> lambda_grid{0.25, 0.4, 0.6, 1.0, 1.6, 2.5, 4.0};
};

// Measured growth of || Op_x(p)(eta) ||_{W^s -> W^{s-nu}} against the twisted
// bound pi(mu,nu) + M(s) + M(s-mu) + 0.1, plus the W^0 bound for mu <= 0.
Report verify_nn9(const EdgeSpaceSpec& spec, const MultiplierFamily& p, double s, double mu,
                  double nu, const Nn9Config& cfg = {});

}  // namespace mellinlab
