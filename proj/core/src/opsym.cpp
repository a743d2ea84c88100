#include "mellinlab/opsym.hpp"

#include "mellinlab/fitting.hpp"
#include "mellinlab/linalg.hpp"

namespace mellinlab {

OperatorSymbol reduction_symbol(const OrderReducingFamily& fam, double mu) {
    OperatorSymbol a;
    a.order = mu;
    a.domain = fam.scale;
    a.codomain = fam.scale;
    a.kind = "reduction";
    a.eval = [fam, mu](const RVec&, const RVec& eta) {
        return Mat(fam.diag(mu, eta).cast<cd>().asDiagonal());
    };
    return a;
}

OperatorSymbol identity_symbol(const ScaleSpec& scale) {
    OperatorSymbol a;
    a.order = 0.0;
    a.domain = scale;
    a.codomain = scale;
    a.kind = "identity";
    a.eval = [scale](const RVec&, const RVec&) { return Mat(Mat::Identity(scale.dim(), scale.dim())); };
    return a;
}

OperatorSymbol polynomial_symbol(const ScaleSpec& scale, int q) {
    OperatorSymbol a;
    a.order = 2.0;
    a.domain = scale;
    a.codomain = scale;
    a.kind = "polynomial";
    (void)q;
    a.eval = [scale](const RVec&, const RVec& eta) {
        return Mat(eta[0] * eta[0] * Mat::Identity(scale.dim(), scale.dim()));
    };
    return a;
}

OperatorSymbol gaussian_smoothing_symbol(const ScaleSpec& scale, int q) {
    OperatorSymbol a;
    a.order = -40.0;  // stands in for order -infinity on the test grids
    a.domain = scale;
    a.codomain = scale;
    a.kind = "gaussian-smoothing";
    (void)q;
    // rank-one |v><v| with a fixed smooth vector
    Vec v(scale.dim());
    for (int i = 0; i < scale.dim(); ++i) {
        const int k = scale.mode_of(i);
        v[i] = std::exp(-0.25 * k * k);
    }
    v.normalize();
    Mat proj = v * v.adjoint();
    a.eval = [proj](const RVec&, const RVec& eta) {
        return Mat(std::exp(-eta.squaredNorm()) * proj);
    };
    return a;
}

OperatorSymbol bracket_power_symbol(const ScaleSpec& scale, int q, double mu) {
    OperatorSymbol a;
    a.order = mu;
    a.domain = scale;
    a.codomain = scale;
    a.kind = "bracket-power";
    (void)q;
    a.eval = [scale, mu](const RVec&, const RVec& eta) {
        return Mat(std::pow(bracket(eta), mu) * Mat::Identity(scale.dim(), scale.dim()));
    };
    return a;
}

namespace {

int total(const std::vector<int>& m) {
    int t = 0;
    for (int v : m) t += v;
    return t;
}

Mat derivative_rec(const OperatorSymbol& a, RVec y, RVec eta, std::vector<int> alpha,
                   std::vector<int> beta, double h) {
    if (total(alpha) == 0 && total(beta) == 0) return a.eval(y, eta);
    auto shifted = [&](bool in_y, int dir, double sh) {
        RVec yy = y, ee = eta;
        if (in_y)
            yy[dir] += sh;
        else
            ee[dir] += sh;
        return std::make_pair(yy, ee);
    };
    auto peel = [&](bool in_y, int dir, std::vector<int> a_rest, std::vector<int> b_rest) {
        auto eval_at = [&](double sh) {
            auto [yy, ee] = shifted(in_y, dir, sh);
            OperatorSymbol tmp = a;
            return derivative_rec(tmp, yy, ee, a_rest, b_rest, h);
        };
        const Mat d1 = (eval_at(h) - eval_at(-h)) / (2.0 * h);
        const Mat d2 = (eval_at(2.0 * h) - eval_at(-2.0 * h)) / (4.0 * h);
        return Mat((4.0 * d1 - d2) / 3.0);
    };
    for (size_t i = 0; i < alpha.size(); ++i)
        if (alpha[i] > 0) {
            std::vector<int> rest = alpha;
            rest[i] -= 1;
            return peel(true, static_cast<int>(i), rest, beta);
        }
    for (size_t i = 0; i < beta.size(); ++i)
        if (beta[i] > 0) {
            std::vector<int> rest = beta;
            rest[i] -= 1;
            return peel(false, static_cast<int>(i), alpha, rest);
        }
    return a.eval(y, eta);
}

std::vector<std::vector<int>> multi_indices_upto(int q, int max_total) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(std::max(q, 1), 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == static_cast<int>(cur.size())) {
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

std::vector<RVec> grid_etas(int q, const std::vector<double>& mags, double h) {
    std::vector<RVec> pts;
    for (double m : mags) {
        if (m < h) continue;
        RVec e = RVec::Zero(q);
        e[0] = m;
        pts.push_back(e);
    }
    return pts;
}

std::vector<RVec> grid_ys(const OperatorSymbol& a, int samples) {
    std::vector<RVec> pts;
    if (a.y_dim == 0) {
        pts.push_back(RVec());
        return pts;
    }
    for (int i = 0; i < samples; ++i) {
        const double t = samples == 1 ? 0.5 : double(i) / (samples - 1);
        RVec y = RVec::Constant(a.y_dim, a.y_box.first + t * (a.y_box.second - a.y_box.first));
        pts.push_back(y);
    }
    return pts;
}

double sandwiched_norm(const Mat& d, const RVec& left, const RVec& right) {
    Mat m = d;
    for (int i = 0; i < m.rows(); ++i) m.row(i) *= left[i];
    for (int j = 0; j < m.cols(); ++j) m.col(j) *= right[j];
    return op_norm(m);
}

}  // namespace

Mat symbol_derivative(const OperatorSymbol& a, const RVec& y, const RVec& eta,
                      const std::vector<int>& alpha, const std::vector<int>& beta, double step) {
    return derivative_rec(a, y, eta, alpha, beta, step);
}

double symbol_seminorm(const OperatorSymbol& a, const OrderReducingFamily& dom_fam,
                       const OrderReducingFamily& cod_fam, int k, double h,
                       const SymbolGrid& grid) {
    if (k < 0 || h <= 0.0) throw std::invalid_argument("symbol_seminorm: need k >= 0, h > 0");
    const int q = dom_fam.param_dim;
    const auto ys = grid_ys(a, grid.y_samples);
    const auto etas = grid_etas(q, grid.eta_magnitudes, h);
    std::vector<double> s_values;
    for (int i = 0; i < grid.s_samples; ++i) {
        const double t = grid.s_samples == 1 ? 0.5 : double(i) / (grid.s_samples - 1);
        s_values.push_back(a.s_interval.first + t * (a.s_interval.second - a.s_interval.first));
    }

    double sup = 0.0;
    for (const auto& alpha : multi_indices_upto(std::max(a.y_dim, 1), k))
        for (const auto& beta : multi_indices_upto(q, k)) {
            if (total(alpha) + total(beta) > k) continue;
            if (a.y_dim == 0 && total(alpha) > 0) continue;
            const int ab = total(beta);
            for (const auto& y : ys)
                for (const auto& eta : etas) {
                    const Mat d = symbol_derivative(a, y, eta, alpha, beta, grid.fd_step);
                    for (double s : s_values) {
                        const RVec left = cod_fam.diag(s - a.order + ab, eta);
                        const RVec right = dom_fam.diag(-s, eta);
                        const double v = sandwiched_norm(d, left, right);
                        if (!std::isfinite(v))
                            throw std::runtime_error("symbol_seminorm: non-finite value");
                        sup = std::max(sup, v);
                    }
                }
        }
    return sup;
}

Report verify_smoothing_characterization(const OperatorSymbol& a,
                                         const OrderReducingFamily& dom_fam,
                                         const OrderReducingFamily& cod_fam,
                                         const SymbolGrid& grid) {
    Report rep;
    rep.name = "smoothing-characterization";

    // direction 1: seminorms at every tested order stay bounded (no growth in <eta>)
    bool all_orders_ok = true;
    for (double mu : {-6.0, -4.0, -2.0, 0.0}) {
        OperatorSymbol b = a;
        b.order = mu;
        std::vector<double> xs, ys;
        for (double m : grid.eta_magnitudes) {
            RVec e = RVec::Zero(dom_fam.param_dim);
            e[0] = m;
            const RVec left = cod_fam.diag(-mu, e);
            const RVec right = dom_fam.diag(0.0, e);
            const Mat d = a.eval(RVec(), e);
            xs.push_back(bracket(e));
            ys.push_back(sandwiched_norm(d, left, right));
        }
        const PowerFit fit = fit_power_law(xs, ys, 1e-300);
        rep.set("order_growth_mu" + std::to_string(mu), fit.exponent);
        if (fit.used > 0 && fit.exponent > 0.05) all_orders_ok = false;
    }

    // direction 2: <eta>^M || D^beta a ||_{s,t} bounded for tested M, s, t
    bool decay_ok = true;
    for (double M : {1.0, 2.0, 4.0}) {
        for (double t : {0.0, 1.0}) {
            std::vector<double> xs, ys;
            for (double m : grid.eta_magnitudes) {
                RVec e = RVec::Zero(dom_fam.param_dim);
                e[0] = m;
                const Mat d = a.eval(RVec(), e);
                // || . ||_{s,t} with s = 0: weight rows by <k>^t
                RVec left(a.codomain.dim());
                for (int i = 0; i < a.codomain.dim(); ++i)
                    left[i] = a.codomain.mode_weight(t, a.codomain.mode_of(i));
                RVec right = RVec::Ones(a.domain.dim());
                xs.push_back(bracket(e));
                ys.push_back(std::pow(bracket(e), M) * sandwiched_norm(d, left, right));
            }
            const PowerFit fit = fit_power_law(xs, ys, 1e-300);
            if (fit.used > 0 && fit.exponent > 0.05) decay_ok = false;
        }
    }

    rep.set("all_orders_bounded", all_orders_ok ? 1.0 : 0.0);
    rep.set("polynomial_decay", decay_ok ? 1.0 : 0.0);
    rep.set("is_smoothing", (all_orders_ok && decay_ok) ? 1.0 : 0.0);
    rep.require(all_orders_ok == decay_ok, "characterization directions disagree on the grid");
    return rep;
}

Report verify_zero_order_bound(const OperatorSymbol& a, double mu, const SymbolGrid& grid) {
    if (mu > 0.0) throw std::invalid_argument("verify_zero_order_bound: requires mu <= 0");
    Report rep;
    rep.name = "zero-order-bound";
    std::vector<double> xs, ys;
    for (double m : grid.eta_magnitudes) {
        RVec e(1);
        e[0] = m;
        xs.push_back(bracket(e));
        ys.push_back(op_norm(a.eval(RVec(), e)));
    }
    const PowerFit fit = fit_power_law(xs, ys);
    rep.set("exponent", fit.exponent);
    rep.set("c", fit.c);
    rep.require(fit.exponent <= mu + 0.05, "fitted exponent above mu + 0.05");
    return rep;
}

Report verify_growth_bound(const OperatorSymbol& a, double nu, const SymbolGrid& grid) {
    if (nu < a.order) throw std::invalid_argument("verify_growth_bound: requires nu >= order");
    Report rep;
    rep.name = "growth-bound";
    double worst_residual = 0.0;
    double worst_A = -1e300;
    for (double s : {-1.0, 0.0, 1.0}) {
        std::vector<double> xs, ys;
        for (double m : grid.eta_magnitudes) {
            RVec e(1);
            e[0] = m;
            RVec left(a.codomain.dim()), right(a.domain.dim());
            for (int i = 0; i < a.codomain.dim(); ++i)
                left[i] = a.codomain.mode_weight(s - nu, a.codomain.mode_of(i));
            for (int j = 0; j < a.domain.dim(); ++j)
                right[j] = a.domain.mode_weight(-s, a.domain.mode_of(j));
            xs.push_back(bracket(e));
            ys.push_back(sandwiched_norm(a.eval(RVec(), e), left, right));
        }
        const PowerFit fit = fit_power_law(xs, ys);
        worst_residual = std::max(worst_residual, fit.rel_residual);
        worst_A = std::max(worst_A, fit.exponent);
    }
    rep.set("A", worst_A);
    rep.set("rel_residual", worst_residual);
    rep.require(std::isfinite(worst_A), "non-finite growth exponent");
    rep.require(worst_residual <= 0.10, "power-law fit residual above 10%");
    return rep;
}

OperatorSymbol compose_symbols(const OperatorSymbol& a, const OperatorSymbol& atil) {
    if (!(atil.codomain == a.domain))
        throw std::invalid_argument("compose_symbols: scale mismatch");
    OperatorSymbol out;
    out.order = a.order + atil.order;
    out.domain = atil.domain;
    out.codomain = a.codomain;
    out.y_dim = std::max(a.y_dim, atil.y_dim);
    out.y_box = a.y_box;
    out.s_interval = a.s_interval;
    out.kind = "composite";
    auto ea = a.eval, eb = atil.eval;
    out.eval = [ea, eb](const RVec& y, const RVec& eta) { return Mat(ea(y, eta) * eb(y, eta)); };
    return out;
}

OperatorSymbol differentiate_symbol(const OperatorSymbol& a, const std::vector<int>& alpha,
                                    const std::vector<int>& beta) {
    OperatorSymbol out = a;
    int ab = 0;
    for (int b : beta) ab += b;
    out.order = a.order - ab;
    out.kind = a.kind + "-derivative";
    auto base = a;
    out.eval = [base, alpha, beta](const RVec& y, const RVec& eta) {
        return symbol_derivative(base, y, eta, alpha, beta, 1e-3);
    };
    return out;
}

}  // namespace mellinlab
