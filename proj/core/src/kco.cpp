#include "mellinlab/kco.hpp"

#include "mellinlab/fitting.hpp"
#include "mellinlab/linalg.hpp"

namespace mellinlab::kco {

double CutoffFunction::operator()(double theta) const {
    auto raw = [&](double th) {
        const double t = std::abs(th - shift) / support;
        if (t >= 1.0) return 0.0;
        if (shape == Shape::Bump) return std::exp(-1.0 / (1.0 - t * t));
        if (t <= 1.0 - flat_eps) return 1.0;
        return 1.0 - smoothstep((t - (1.0 - flat_eps)) / flat_eps);
    };
    const double at0 = raw(0.0);
    if (at0 <= 0.0) throw std::invalid_argument("CutoffFunction: support must cover theta = 0");
    return raw(theta) / at0 * std::exp(theta * tilt);
}

double CutoffFunction::derivative_at_zero(int k) const {
    if (k == 0) return (*this)(0.0);
    const double h = 0.01 * support;
    // 8th-order central difference weights for the k-th derivative via repeated
    // first differences on a geometric stencil
    auto d1 = [&](auto&& f, double x, double step) {
        return (-f(x + 2 * step) + 8 * f(x + step) - 8 * f(x - step) + f(x - 2 * step)) /
               (12.0 * step);
    };
    std::function<double(int, double)> rec = [&](int order, double x) -> double {
        if (order == 0) return (*this)(x);
        return d1([&](double xx) { return rec(order - 1, xx); }, x, h);
    };
    return rec(k, 0.0);
}

Mat LineSymbol::eval(double rho) const {
    if (terms.empty()) throw std::runtime_error("LineSymbol: empty");
    Mat acc = Mat::Zero(codomain.dim(), domain.dim());
    for (const auto& t : terms) acc += t.profile(rho) * t.factor;
    return acc;
}

Mat LineSymbol::derivative(double rho, int k, double step) const {
    if (k == 0) return eval(rho);
    const Mat d1 = (derivative(rho + step, k - 1, step) - derivative(rho - step, k - 1, step)) /
                   (2.0 * step);
    const Mat d2 = (derivative(rho + 2 * step, k - 1, step) - derivative(rho - 2 * step, k - 1, step)) /
                   (4.0 * step);
    return (4.0 * d1 - d2) / 3.0;
}

namespace {

LineSymbol scalar_profile_line(const ScaleSpec& scale, double order,
                               std::function<cd(double)> g) {
    LineSymbol a;
    a.order = order;
    a.domain = scale;
    a.codomain = scale;
    a.terms.push_back({std::move(g), Mat::Identity(scale.dim(), scale.dim())});
    return a;
}

}  // namespace

LineSymbol constant_line(const ScaleSpec& scale, cd value) {
    return scalar_profile_line(scale, 0.0, [value](double) { return value; });
}

LineSymbol bracket_line(const ScaleSpec& scale, double mu) {
    return scalar_profile_line(scale, mu,
                               [mu](double rho) { return cd(std::pow(bracket(rho), mu)); });
}

LineSymbol reduction_line(const OrderReducingFamily& fam, double mu) {
    LineSymbol a;
    a.order = mu;
    a.domain = fam.scale;
    a.codomain = fam.scale;
    for (int i = 0; i < fam.scale.dim(); ++i) {
        const int k = fam.scale.mode_of(i);
        Mat e = Mat::Zero(fam.scale.dim(), fam.scale.dim());
        e(i, i) = 1.0;
        auto mult = fam.multiplier;
        a.terms.push_back({[mult, mu, k](double rho) { return cd(mult(mu, eta1(rho), k)); }, e});
    }
    return a;
}

LineSymbol linear_line(const ScaleSpec& scale, cd a0, cd a1) {
    return scalar_profile_line(scale, 1.0, [a0, a1](double rho) { return a0 + a1 * rho; });
}

LineSymbol gaussian_line(const ScaleSpec& scale) {
    return scalar_profile_line(scale, -40.0, [](double rho) { return cd(std::exp(-rho * rho)); });
}

Mat HoloSymbol::eval(cd zeta) const {
    if (std::abs(zeta.imag()) > delta_max + 1e-12)
        throw std::invalid_argument("HoloSymbol: delta outside configured strip");
    const auto lg = tgrid.line();
    Mat acc = Mat::Zero(codomain.dim(), domain.dim());
    for (const auto& t : terms) {
        cd s = 0.0;
        for (int j = 0; j < lg.n; ++j) {
            const double theta = lg.x(j);
            if (t.kernel[j] == cd(0.0)) continue;
            s += t.kernel[j] * std::exp(cd(zeta.imag() * theta, -zeta.real() * theta));
        }
        acc += (s * lg.dx) * t.factor;
    }
    return acc;
}

cd HoloSymbol::scalar_kernel_at(double theta) const {
    const auto lg = tgrid.line();
    if (theta < lg.x0 || theta > lg.x(lg.n - 1)) return 0.0;
    const double pos = (theta - lg.x0) / lg.dx;
    const int i1 = std::clamp(static_cast<int>(std::floor(pos)), 1, lg.n - 3);
    const double u = pos - i1;
    cd out = 0.0;
    for (const auto& t : terms) {
        if (t.factor.rows() != 1 || t.factor.cols() != 1)
            throw std::runtime_error("scalar_kernel_at: non-scalar factor");
        // 4-point Lagrange interpolation
        const cd km1 = t.kernel[i1 - 1], k0 = t.kernel[i1], k1 = t.kernel[i1 + 1],
                 k2 = t.kernel[i1 + 2];
        const cd v = km1 * (-u * (u - 1.0) * (u - 2.0) / 6.0) +
                     k0 * ((u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0) +
                     k1 * (-(u + 1.0) * u * (u - 2.0) / 2.0) +
                     k2 * ((u + 1.0) * u * (u - 1.0) / 6.0);
        out += v * t.factor(0, 0);
    }
    return out;
}

HoloSymbol kernel_cutoff(const CutoffFunction& phi, const LineSymbol& a, const ThetaGrid& tg) {
    if (phi.support + std::abs(phi.shift) > tg.theta_max)
        throw std::invalid_argument("kernel_cutoff: cutoff support exceeds theta grid");
    HoloSymbol h;
    h.order = a.order;
    h.domain = a.domain;
    h.codomain = a.codomain;
    h.phi = phi;
    h.tgrid = tg;
    h.delta_max = std::min(3.0, 25.0 / (phi.support + std::abs(phi.shift)));
    const auto lg = tg.line();
    const auto fg = fft::freq_grid(lg);
    std::vector<cd> samples(lg.n);
    for (const auto& t : a.terms) {
        for (int k = 0; k < lg.n; ++k) samples[k] = t.profile(fg.x(k));
        // k_a = (1/2pi) int e^{i theta rho} a(rho) drho on the theta grid
        const auto ker = fft::inverse_line(lg, samples);
        // aliasing check: relative edge-cell mass
        double kmax = 0.0;
        for (const auto& v : ker) kmax = std::max(kmax, std::abs(v));
        const double edge = std::max(std::abs(ker.front()), std::abs(ker.back())) * lg.dx;
        if (kmax > 0.0 && edge > 1e-8 * kmax)
            throw std::runtime_error("kernel_cutoff: aliasing detected (kernel mass at grid edge)");
        HoloSymbol::Term ht;
        ht.kernel.resize(lg.n);
        for (int j = 0; j < lg.n; ++j) ht.kernel[j] = phi(lg.x(j)) * ker[j];
        ht.factor = t.factor;
        h.terms.push_back(std::move(ht));
    }
    return h;
}

Mat evaluate_strip(const HoloSymbol& h, cd zeta) { return h.eval(zeta); }

RemainderFit asymptotic_remainder(const CutoffFunction& phi, const LineSymbol& a, int K,
                                  const std::vector<double>& rho_grid, const ThetaGrid& tg) {
    if (K < 1) throw std::invalid_argument("asymptotic_remainder: K >= 1");
    const HoloSymbol h = kernel_cutoff(phi, a, tg);
    std::vector<double> dphi(K);
    for (int k = 0; k < K; ++k) dphi[k] = phi.derivative_at_zero(k);

    std::vector<double> xs, ys;
    double scale0 = 0.0;
    for (double rho : rho_grid) {
        Mat expansion = Mat::Zero(a.codomain.dim(), a.domain.dim());
        double fact = 1.0;
        for (int k = 0; k < K; ++k) {
            if (k > 0) fact *= k;
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            expansion += (sign / fact) * dphi[k] * a.derivative(rho, k);
        }
        const Mat rem = h.eval_line(rho) - expansion;
        xs.push_back(bracket(rho));
        ys.push_back(op_norm(rem));
        scale0 = std::max(scale0, op_norm(a.eval(rho)));
    }
    RemainderFit out;
    out.target = a.order - K + 0.3;
    double ymax = 0.0;
    for (double v : ys) ymax = std::max(ymax, v);
    if (ymax <= 1e-10 * std::max(scale0, 1.0)) {
        out.at_floor = true;
        out.exponent = -40.0;
        out.pass = true;
        return out;
    }
    const PowerFit fit = fit_power_law(xs, ys, 1e-300);
    out.exponent = fit.exponent;
    out.pass = fit.exponent <= out.target;
    return out;
}

Report verify_strip_membership(const HoloSymbol& h, std::pair<double, double> delta_interval,
                               const OrderReducingFamily& dom_fam,
                               const OrderReducingFamily& cod_fam, int k_budget) {
    Report rep;
    rep.name = "strip-membership";
    const std::vector<double> rhos{1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0};
    const std::vector<double> svals{-1.0, 0.0, 1.0};
    const int n_delta = 5;
    double sup = 0.0;
    for (int i = 0; i < n_delta; ++i) {
        const double t = double(i) / (n_delta - 1);
        const double delta = delta_interval.first + t * (delta_interval.second - delta_interval.first);
        double line_sup = 0.0;
        for (int k = 0; k <= k_budget; ++k)
            for (double rho : rhos) {
                // d^k/drho^k of the line restriction by central differences
                Mat d;
                if (k == 0) {
                    d = h.eval(cd(rho, delta));
                } else {
                    const double step = 0.25;
                    d = (h.eval(cd(rho + step, delta)) - h.eval(cd(rho - step, delta))) /
                        (2.0 * step);
                }
                for (double s : svals) {
                    const RVec left = cod_fam.diag(s - h.order + k, eta1(rho));
                    const RVec right = dom_fam.diag(-s, eta1(rho));
                    Mat m = d;
                    for (int r = 0; r < m.rows(); ++r) m.row(r) *= left[r];
                    for (int c = 0; c < m.cols(); ++c) m.col(c) *= right[c];
                    line_sup = std::max(line_sup, op_norm(m));
                }
            }
        rep.set("seminorm_delta" + std::to_string(delta), line_sup);
        sup = std::max(sup, line_sup);
    }
    rep.set("sup", sup);
    rep.require(std::isfinite(sup), "non-finite seminorm over the strip");
    return rep;
}

}  // namespace mellinlab::kco
