// Operator-valued symbol classes S^mu(U x R^q; E, E~) defined through order
// reductions: seminorm evaluation on declared grids and the algebra /
// characterization statements as executable checks.  Membership here is
// operational -- finite seminorms on the declared grids -- not a proof.
#pragma once

#include "mellinlab/report.hpp"
#include "mellinlab/scales.hpp"

namespace mellinlab {

struct OperatorSymbol {
    double order = 0.0;
    ScaleSpec domain;
    ScaleSpec codomain;
    // (y, eta) -> mode matrix codomain.dim() x domain.dim(); y empty for constant symbols
    std::function<Mat(const RVec& y, const RVec& eta)> eval;
    int y_dim = 0;              // 0 = constant in y
    std::pair<double, double> y_box{-1.0, 1.0};
    std::pair<double, double> s_interval{-2.0, 2.0};
    std::string kind = "custom";

    Mat at(const RVec& y, const RVec& eta) const { return eval(y, eta); }
};

struct SymbolGrid {
    std::vector<double> eta_magnitudes{1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0};
    int y_samples = 3;
    int s_samples = 5;
    double fd_step = 1e-3;  // finite-difference step in (y, eta)
};

OperatorSymbol reduction_symbol(const OrderReducingFamily& fam, double mu);
OperatorSymbol identity_symbol(const ScaleSpec& scale);
// a(y, eta) = eta_1^2 * id, order 2 (polynomial symbol)
OperatorSymbol polynomial_symbol(const ScaleSpec& scale, int q);
// a(eta) = e^{-|eta|^2} * (rank-one operator), order -infinity
OperatorSymbol gaussian_smoothing_symbol(const ScaleSpec& scale, int q);
// a(eta) = <eta>^mu * id
OperatorSymbol bracket_power_symbol(const ScaleSpec& scale, int q, double mu);

// D^alpha_y D^beta_eta a by central differences with one Richardson step
Mat symbol_derivative(const OperatorSymbol& a, const RVec& y, const RVec& eta,
                      const std::vector<int>& alpha, const std::vector<int>& beta,
                      double step);

// max over |alpha|+|beta| <= k of sup over the grid (|eta| >= h, s in the declared
// interval) of || b~^{s-mu+|beta|}(eta) {D^alpha_y D^beta_eta a} b^{-s}(eta) ||.
double symbol_seminorm(const OperatorSymbol& a, const OrderReducingFamily& dom_fam,
                       const OrderReducingFamily& cod_fam, int k, double h,
                       const SymbolGrid& grid = {});

// Both directions of the S^{-infty} characterization on the grid: order -M
// seminorms finite for every tested M  <=>  <eta>^M ||D^beta a||_{s,t} bounded.
Report verify_smoothing_characterization(const OperatorSymbol& a,
                                         const OrderReducingFamily& dom_fam,
                                         const OrderReducingFamily& cod_fam,
                                         const SymbolGrid& grid = {});

// Fits ||a(y,eta)||_{0,0} <= c <eta>^mu for mu <= 0; pass iff exponent <= mu + 0.05.
Report verify_zero_order_bound(const OperatorSymbol& a, double mu, const SymbolGrid& grid = {});

// Fits ||a(y,eta)||_{s,s-nu} <= c <eta>^A for nu >= order; records A.
Report verify_growth_bound(const OperatorSymbol& a, double nu, const SymbolGrid& grid = {});

OperatorSymbol compose_symbols(const OperatorSymbol& a, const OperatorSymbol& atil);
OperatorSymbol differentiate_symbol(const OperatorSymbol& a, const std::vector<int>& alpha,
                                    const std::vector<int>& beta);

}  // namespace mellinlab
