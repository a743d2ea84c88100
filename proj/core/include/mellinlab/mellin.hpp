// Weighted Mellin transform on a logarithmic grid, the spaces H^{s,gamma}(R+, E)
// and H^s(R, E), Mellin pseudodifferential operators op_M^gamma(f) via the exact
// push-forward to y = -log r, and Mellin quantisation of Fuchs-degenerate symbols.
//
// Conventions: w = line_re + i rho; (M_gamma u)(w) = (F S_gamma u)(rho) with
// S_gamma u(y) = e^{-(1/2-gamma) y} u(e^{-y}) and F f(rho) = int e^{-i y rho} f dy.
// Norms carry the 1/2pi line measure so the Mellin-Fourier conjugation identity
// is exact.
#pragma once

#include "mellinlab/fft.hpp"
#include "mellinlab/report.hpp"
#include "mellinlab/scales.hpp"

namespace mellinlab {

struct LogGrid {
    double y_min = -12.0;
    double y_max = 12.0;
    int n = 4096;               // power of two
    double window_frac = 0.10;  // raised-cosine taper on each outer fraction

    double dy() const { return (y_max - y_min) / n; }
    double y(int j) const { return y_min + j * dy(); }
    double r(int j) const { return std::exp(-y(j)); }
    fft::LineGrid line() const { return {y_min, dy(), n}; }
    // taper value at node j (1 in the bulk)
    double window(int j) const;
    bool in_plateau(int j) const;
    static LogGrid standard() { return {}; }
};

struct GridFunction {
    LogGrid grid;
    ScaleSpec scale;
    Mat vals;  // n x scale.dim()

    GridFunction() = default;
    GridFunction(const LogGrid& g, const ScaleSpec& s);
    static GridFunction from_scalar(const LogGrid& g, const std::function<cd(double r)>& f);
    static GridFunction from_vector(const LogGrid& g, const ScaleSpec& s,
                                    const std::function<Vec(double r)>& f);
    double l2_dr_norm() const;  // { int |u|^2_{E^0} dr }^{1/2} by log-grid quadrature
    double l2_dy_norm() const;
};

// Samples of a transform along the vertical line Re w = line_re, on the dual
// grid of the y-grid.
struct MellinLine {
    double line_re = 0.5;
    LogGrid grid;
    ScaleSpec scale;
    Mat vals;  // n x dim, row k at rho_k

    double rho(int k) const { return fft::freq_grid(grid.line()).x(k); }
    cd w(int k) const { return cd(line_re, rho(k)); }
};

// (S_gamma u)(y) = e^{-(1/2-gamma) y} u(e^{-y}); unitary onto H^s(R, E).
GridFunction s_gamma_map(double gamma, const GridFunction& u);

// Weighted transform on Gamma_{1/2-gamma}; applies the grid window to S_gamma u,
// errors when the transform has not decayed at the Nyquist edge.
MellinLine mellin_transform(double gamma, const GridFunction& u);
GridFunction mellin_inverse(const MellinLine& line, double gamma);

// Direct quadrature of (M u)(w) = int r^{w-1} u dr at one point (no window).
Vec mellin_eval(const GridFunction& u, cd w);

// || u ||_{H^{s,gamma}}: line Gamma_{(d+1)/2 - gamma} with d from the scale.
double hs_gamma_norm(double s, double gamma, const GridFunction& u,
                     const OrderReducingFamily& fam);

// Cylindrical norm || v ||_{H^s(R, E)} of a function stored on the y-grid.
double cyl_norm(double s, const GridFunction& v, const OrderReducingFamily& fam);

struct MellinLineSymbol {
    double order = 0.0;
    enum class Dep { Constant, ROnly, Full } dep = Dep::Constant;
    std::function<Mat(double r, double rp, cd w)> eval;  // mode matrix at (r, r', w)
    std::string kind = "custom";
};

MellinLineSymbol constant_line_symbol(const ScaleSpec& scale, cd value);
MellinLineSymbol w_line_symbol(const ScaleSpec& scale);  // f(w) = w * id
MellinLineSymbol reduction_line_symbol(const OrderReducingFamily& fam, double mu);

// op_M^gamma(f) u, computed as the push-forward Op_y(g_gamma) in y = -log r;
// Fourier multiplier for constant symbols, Kumano-go double quadrature otherwise.
GridFunction op_mellin(double gamma, const MellinLineSymbol& f, const GridFunction& u);

struct OpMellinBound {
    double c = 0.0;               // sup over the line of ||b~^{s-mu} f b^{-s}||
    double measured_ratio = 0.0;  // worst norm ratio over random test functions
    bool pass = false;
};
OpMellinBound op_mellin_bound(const MellinLineSymbol& f, double s, double gamma,
                              const OrderReducingFamily& fam, int n_trials = 8,
                              unsigned long long seed = 1);

// -r d/dr realized spectrally in y (per mode).
GridFunction fuchs_derivative(const GridFunction& u, int order = 1);

// Symbols a(r, rho) = c(r) atilde(r rho) for the quantisation test corpus.
struct EntireSymbol {
    enum class Kind { Constant, Polynomial, GaussianKernel } kind = Kind::Constant;
    cd value = 1.0;               // Constant
    std::vector<cd> poly;         // atilde(theta) = sum_m poly[m] theta^m
    std::function<double(double r)> r_profile;  // optional factor c(r); null = 1
    double profile(double r) const { return r_profile ? r_profile(r) : 1.0; }
};

struct QuantizeResult {
    MellinLineSymbol h;
    Report discrepancy;
};

// Mellin quantisation: h is obtained by transforming the Schwartz kernel of
// Op_r(a) in the quotient variable r'/r on the weight line delta (with a smooth
// cut-off in log(r'/r), which realizes the smoothing-remainder structure).  The
// discrepancy report measures ||(op_M^delta(h) - Op_r(a)) u_omega|| against the
// oscillation frequency omega and fits the decay exponent.
QuantizeResult mellin_quantize(const EntireSymbol& a, double delta, const LogGrid& grid);

// Op_r(a) applied directly (spectral derivatives for polynomial symbols, kernel
// quadrature for Gaussian ones).
GridFunction op_r_apply(const EntireSymbol& a, const GridFunction& u);

}  // namespace mellinlab
