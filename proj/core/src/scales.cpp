#include "mellinlab/scales.hpp"

#include "mellinlab/fitting.hpp"
#include "mellinlab/linalg.hpp"

namespace mellinlab {

Vec ScaleSpec::basis(int k) const {
    if (k < -mode_cutoff || k > mode_cutoff) throw std::invalid_argument("basis: mode out of range");
    Vec e = Vec::Zero(dim());
    e[index_of(k)] = 1.0;
    return e;
}

ScaleSpec make_fourier_scale(int n_modes, int d) {
    if (n_modes < 0 || d < 0) throw std::invalid_argument("make_fourier_scale: negative input");
    ScaleSpec s;
    s.mode_cutoff = n_modes;
    s.base_dim = d;
    return s;
}

double scale_norm(const ScaleSpec& spec, double s, const Vec& u) {
    if (u.size() != spec.dim()) throw std::invalid_argument("scale_norm: element not in scale");
    double acc = 0.0;
    for (int i = 0; i < spec.dim(); ++i) {
        const double w = spec.mode_weight(s, spec.mode_of(i));
        acc += w * w * std::norm(u[i]);
    }
    return std::sqrt(acc);
}

cd dual_pairing(const ScaleSpec& spec, const Vec& u, const Vec& v) {
    if (u.size() != spec.dim() || v.size() != spec.dim())
        throw std::invalid_argument("dual_pairing: scale mismatch");
    cd acc = 0.0;
    for (int i = 0; i < spec.dim(); ++i) acc += u[i] * std::conj(v[i]);
    return acc;
}

RVec OrderReducingFamily::diag(double mu, const RVec& eta) const {
    RVec d(scale.dim());
    for (int i = 0; i < scale.dim(); ++i) d[i] = multiplier(mu, eta, scale.mode_of(i));
    return d;
}

Vec OrderReducingFamily::apply(double mu, const RVec& eta, const Vec& u) const {
    if (u.size() != scale.dim()) throw std::invalid_argument("apply: element not in scale");
    Vec out(u.size());
    for (int i = 0; i < scale.dim(); ++i) out[i] = u[i] * multiplier(mu, eta, scale.mode_of(i));
    return out;
}

namespace {

// central difference of the diagonal in direction dir with step h
RVec central_diff(const OrderReducingFamily& fam, double mu, const RVec& eta, int dir, double h) {
    RVec ep = eta, em = eta;
    ep[dir] += h;
    em[dir] -= h;
    return (fam.diag(mu, ep) - fam.diag(mu, em)) / (2.0 * h);
}

RVec richardson_diff(const OrderReducingFamily& fam, double mu, const RVec& eta, int dir,
                     double h) {
    const RVec d1 = central_diff(fam, mu, eta, dir, h);
    const RVec d2 = central_diff(fam, mu, eta, dir, 2.0 * h);
    return (4.0 * d1 - d2) / 3.0;
}

}  // namespace

RVec OrderReducingFamily::diag_derivative(double mu, const RVec& eta,
                                          const std::vector<int>& beta) const {
    const double h = 1e-3;
    int total = 0;
    for (int b : beta) total += b;
    if (total == 0) return diag(mu, eta);
    // peel one derivative in the first active direction, recurse on the rest
    for (size_t dir = 0; dir < beta.size(); ++dir) {
        if (beta[dir] > 0) {
            std::vector<int> rest = beta;
            rest[dir] -= 1;
            auto eval = [&](double shift) {
                RVec e = eta;
                e[static_cast<int>(dir)] += shift;
                OrderReducingFamily tmp = *this;
                return tmp.diag_derivative(mu, e, rest);
            };
            const RVec d1 = (eval(h) - eval(-h)) / (2.0 * h);
            const RVec d2 = (eval(2.0 * h) - eval(-2.0 * h)) / (4.0 * h);
            return (4.0 * d1 - d2) / 3.0;
        }
    }
    return diag(mu, eta);
}

OrderReducingFamily make_bracket_family(const ScaleSpec& scale, int q) {
    if (q < 1) throw std::invalid_argument("order reducing family requires q >= 1");
    OrderReducingFamily f;
    f.scale = scale;
    f.param_dim = q;
    f.kind = "japanese-bracket";
    f.multiplier = [](double s, const RVec& eta, int k) {
        return std::pow(1.0 + eta.squaredNorm() + double(k) * k, 0.5 * s);
    };
    return f;
}

OrderReducingFamily make_scaled_bracket_family(const ScaleSpec& scale, int q, double m) {
    if (m <= 0.0) throw std::invalid_argument("scaled family requires m > 0");
    OrderReducingFamily f = make_bracket_family(scale, q);
    f.kind = "japanese-bracket-scaled";
    f.multiplier = [m](double s, const RVec& eta, int k) {
        return std::pow(1.0 + m * m * eta.squaredNorm() + double(k) * k, 0.5 * s);
    };
    return f;
}

OrderReducingFamily make_power_bracket_family(const ScaleSpec& scale, int q, double factor) {
    OrderReducingFamily f = make_bracket_family(scale, q);
    f.kind = "japanese-bracket-power";
    f.multiplier = [factor](double s, const RVec& eta, int k) {
        return std::pow(1.0 + eta.squaredNorm() + double(k) * k, 0.5 * factor * s);
    };
    return f;
}

Vec apply_reduction(const OrderReducingFamily& fam, double s, const RVec& eta, const Vec& u) {
    return fam.apply(s, eta, u);
}

double pi_exponent(double mu, double nu) {
    if (nu < mu) throw std::invalid_argument("pi_exponent requires nu >= mu");
    return std::max(mu, mu - nu);
}

namespace {

std::vector<double> default_eta_mags() {
    return {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0};
}

std::vector<RVec> eta_points(int q, const std::vector<double>& mags) {
    std::vector<RVec> pts;
    for (double m : mags) {
        RVec e = RVec::Zero(q);
        e[0] = m;
        pts.push_back(e);
        if (q > 1 && m > 0.0) {
            RVec d = RVec::Constant(q, m / std::sqrt(double(q)));
            pts.push_back(d);
        }
    }
    return pts;
}

std::vector<std::vector<int>> multi_indices(int q, int max_total) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(q, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == q) {
            out.push_back(cur);
            return;
        }
        for (int j = 0; j <= left; ++j) {
            cur[pos] = j;
            rec(pos + 1, left - j);
        }
        cur[pos] = 0;
    };
    rec(0, max_total);
    return out;
}

// || b^{s-mu+|beta|}(eta) {D^beta b^mu(eta)} b^{-s}(eta) ||, exact diagonal maximum
double mixed_norm(const OrderReducingFamily& fam, double s, double mu, const RVec& eta,
                  const std::vector<int>& beta) {
    int ab = 0;
    for (int b : beta) ab += b;
    const RVec d = fam.diag_derivative(mu, eta, beta);
    const RVec left = fam.diag(s - mu + ab, eta);
    const RVec right = fam.diag(-s, eta);
    double m = 0.0;
    for (int i = 0; i < d.size(); ++i) m = std::max(m, std::abs(left[i] * d[i] * right[i]));
    return m;
}

}  // namespace

Report verify_order_reducing(const OrderReducingFamily& fam, const OrderReducingCheckConfig& cfg) {
    Report rep;
    rep.name = "order-reducing";
    const auto mags = cfg.eta_magnitudes.empty() ? default_eta_mags() : cfg.eta_magnitudes;
    const auto etas = eta_points(fam.param_dim, mags);
    const auto betas = multi_indices(fam.param_dim, cfg.beta_max);

    std::vector<double> s_values;
    for (int i = 0; i < cfg.s_samples; ++i) {
        const double t = cfg.s_samples == 1 ? 0.5 : double(i) / (cfg.s_samples - 1);
        s_values.push_back(cfg.s_range.first + t * (cfg.s_range.second - cfg.s_range.first));
    }

    for (double mu : cfg.mus) {
        double sup = 0.0;
        for (const auto& beta : betas)
            for (double s : s_values)
                for (const auto& eta : etas) {
                    const double v = mixed_norm(fam, s, mu, eta, beta);
                    if (!std::isfinite(v)) {
                        rep.pass = false;
                        rep.notes.push_back("non-finite mixed norm");
                        return rep;
                    }
                    sup = std::max(sup, v);
                }
        rep.set("mixed_sup_mu" + std::to_string(mu), sup);

        if (mu <= 0.0) {
            // fit ||b^mu(eta)||_{0,0} against <eta>
            std::vector<double> xs, ys;
            for (double m : mags) {
                if (m < 2.0) continue;
                RVec e = RVec::Zero(fam.param_dim);
                e[0] = m;
                xs.push_back(bracket(e));
                ys.push_back(op_norm(Vec(fam.diag(mu, e).cast<cd>())));
            }
            const PowerFit fit = fit_power_law(xs, ys);
            rep.set("decay_exp_mu" + std::to_string(mu), fit.exponent);
            rep.require(fit.exponent <= mu + 0.05, "decay exponent above mu + 0.05");
        }
    }
    return rep;
}

Report verify_equivalence(const OrderReducingFamily& f1, const OrderReducingFamily& f2,
                          const OrderReducingCheckConfig& cfg) {
    Report rep;
    rep.name = "equivalence";
    if (!(f1.scale == f2.scale) || f1.param_dim != f2.param_dim) {
        throw std::invalid_argument("verify_equivalence: mismatched scales or parameter dims");
    }
    const auto mags = cfg.eta_magnitudes.empty() ? default_eta_mags() : cfg.eta_magnitudes;
    const auto betas = multi_indices(f1.param_dim, cfg.beta_max);

    std::vector<double> s_values;
    for (int i = 0; i < cfg.s_samples; ++i) {
        const double t = cfg.s_samples == 1 ? 0.5 : double(i) / (cfg.s_samples - 1);
        s_values.push_back(cfg.s_range.first + t * (cfg.s_range.second - cfg.s_range.first));
    }

    // mixed expression with outer family `a`, derivative of family `b`
    auto mixed = [&](const OrderReducingFamily& a, const OrderReducingFamily& b, double s,
                     double mu, const RVec& eta, const std::vector<int>& beta) {
        int ab = 0;
        for (int v : beta) ab += v;
        const RVec d = b.diag_derivative(mu, eta, beta);
        const RVec left = a.diag(s - mu + ab, eta);
        const RVec right = a.diag(-s, eta);
        double m = 0.0;
        for (int i = 0; i < d.size(); ++i) m = std::max(m, std::abs(left[i] * d[i] * right[i]));
        return m;
    };

    double worst_growth = 0.0;
    double sup = 0.0;
    for (double mu : cfg.mus)
        for (const auto& beta : betas)
            for (double s : s_values) {
                std::vector<double> xs, y12, y21;
                for (double m : mags) {
                    if (m < 2.0) continue;
                    RVec e = RVec::Zero(f1.param_dim);
                    e[0] = m;
                    xs.push_back(bracket(e));
                    y12.push_back(mixed(f1, f2, s, mu, e, beta));
                    y21.push_back(mixed(f2, f1, s, mu, e, beta));
                }
                for (double v : y12) sup = std::max(sup, v);
                for (double v : y21) sup = std::max(sup, v);
                worst_growth = std::max(worst_growth, fit_power_law(xs, y12).exponent);
                worst_growth = std::max(worst_growth, fit_power_law(xs, y21).exponent);
            }
    rep.set("sup", sup);
    rep.set("growth_exponent", worst_growth);
    rep.require(std::isfinite(sup), "non-finite mixed expression");
    rep.require(worst_growth <= 0.05, "mixed expression grows in <eta>: families not equivalent");
    return rep;
}

ScalingFit verify_scaling_bound(const OrderReducingFamily& fam, double s,
                                const std::vector<double>& m_grid,
                                const std::vector<double>& eta_magnitudes) {
    std::vector<double> ms, ys;
    for (double m : m_grid) {
        if (m <= 0.0) continue;
        double sup = 0.0;
        for (double mag : eta_magnitudes) {
            RVec e = RVec::Zero(fam.param_dim);
            e[0] = mag;
            const RVec a = fam.diag(s, e);
            const RVec b = fam.diag(-s, m * e);
            double v = 0.0;
            for (int i = 0; i < a.size(); ++i) v = std::max(v, std::abs(a[i] * b[i]));
            sup = std::max(sup, v);
        }
        ms.push_back(m);
        ys.push_back(sup);
    }
    const PowerFit fit = fit_scaling_law(ms, ys);
    ScalingFit out;
    out.c = fit.c;
    out.M = fit.exponent;
    out.rel_residual = fit.rel_residual;
    out.pass = fit.rel_residual < 0.10 && std::isfinite(fit.exponent);
    return out;
}

}  // namespace mellinlab
