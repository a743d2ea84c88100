// Concrete Hilbert-space scales (truncated Fourier modes on the circle; N=0 is
// the trivial one-dimensional base) and diagonal order-reducing families b^mu(eta),
// together with executable checks of the defining estimates.
#pragma once

#include "mellinlab/report.hpp"
#include "mellinlab/types.hpp"

#include <functional>
#include <optional>
#include <string>

namespace mellinlab {

struct ScaleSpec {
    int mode_cutoff = 0;  // N; modes k in {-N..N}
    int base_dim = 0;     // d_E, enters only as the weight-line offset (d+1)/2 - gamma

    int dim() const { return 2 * mode_cutoff + 1; }
    int mode_of(int idx) const { return idx - mode_cutoff; }
    int index_of(int k) const { return k + mode_cutoff; }
    // <k>^s weight of a single mode
    double mode_weight(double s, int k) const { return std::pow(1.0 + double(k) * k, 0.5 * s); }
    Vec basis(int k) const;
    bool operator==(const ScaleSpec& o) const {
        return mode_cutoff == o.mode_cutoff && base_dim == o.base_dim;
    }
};

ScaleSpec make_fourier_scale(int n_modes, int d);

// || u ||_{E^s} = { sum_k <k>^{2s} |u_k|^2 }^{1/2}
double scale_norm(const ScaleSpec& spec, double s, const Vec& u);

// (u, v)_0 = sum_k u_k conj(v_k); conjugate-linear in the second slot.
cd dual_pairing(const ScaleSpec& spec, const Vec& u, const Vec& v);

// multiplier(s, eta, k) -> positive scaling of mode k
using MultiplierRule = std::function<double(double, const RVec&, int)>;

struct OrderReducingFamily {
    ScaleSpec scale;
    int param_dim = 1;
    MultiplierRule multiplier;
    std::string kind = "japanese-bracket";

    // diagonal of b^mu(eta), one entry per mode
    RVec diag(double mu, const RVec& eta) const;
    Vec apply(double mu, const RVec& eta, const Vec& u) const;
    // diagonal of D^beta_eta b^mu(eta) by central differences + one Richardson step
    RVec diag_derivative(double mu, const RVec& eta, const std::vector<int>& beta) const;
};

// <eta,k>^s multiplier; satisfies every clause of the order-reduction definition
// exactly in diagonal form.
OrderReducingFamily make_bracket_family(const ScaleSpec& scale, int q = 1);
// same with eta -> m*eta (equivalent family for constant m > 0)
OrderReducingFamily make_scaled_bracket_family(const ScaleSpec& scale, int q, double m);
// multiplier <eta,k>^{factor*s}; factor != 1 breaks equivalence
OrderReducingFamily make_power_bracket_family(const ScaleSpec& scale, int q, double factor);

Vec apply_reduction(const OrderReducingFamily& fam, double s, const RVec& eta, const Vec& u);

// pi(mu, nu) = max(mu, mu - nu), for nu >= mu
double pi_exponent(double mu, double nu);

struct OrderReducingCheckConfig {
    std::vector<double> mus{-2.0, -1.0, 0.0, 1.0, 2.0};
    std::pair<double, double> s_range{-2.0, 2.0};
    int s_samples = 9;
    int beta_max = 2;
    std::vector<double> eta_magnitudes;  // default: log-spaced 0..256
};

// Measures the mixed suprema ||b^{s-mu+|beta|} {D^beta b^mu} b^{-s}|| over the
// grids and fits ||b^mu(eta)|| <= c <eta>^mu for mu <= 0; pass iff all suprema
// finite and each fitted decay exponent <= mu + 0.05.
Report verify_order_reducing(const OrderReducingFamily& fam,
                             const OrderReducingCheckConfig& cfg = {});

// Boundedness of both mixed expressions for two families over the grid; an
// exponent fit in <eta> detects growth (non-equivalence).
Report verify_equivalence(const OrderReducingFamily& f1, const OrderReducingFamily& f2,
                          const OrderReducingCheckConfig& cfg = {});

struct ScalingFit {
    double c = 0.0;
    double M = 0.0;
    double rel_residual = 0.0;
    bool pass = false;
};

// Fits ||b^s(eta) b^{-s}(m eta)|| <= c max(m, 1/m)^M over the m-grid.
ScalingFit verify_scaling_bound(const OrderReducingFamily& fam, double s,
                                const std::vector<double>& m_grid,
                                const std::vector<double>& eta_magnitudes);

}  // namespace mellinlab
