#include "mellinlab/mellin.hpp"

#include "mellinlab/fitting.hpp"
#include "mellinlab/linalg.hpp"

#include <random>
#include <unordered_map>

namespace mellinlab {

double LogGrid::window(int j) const {
    const double t = double(j) / (n - 1);
    if (t < window_frac) return 0.5 * (1.0 - std::cos(pi * t / window_frac));
    if (t > 1.0 - window_frac) return 0.5 * (1.0 - std::cos(pi * (1.0 - t) / window_frac));
    return 1.0;
}

bool LogGrid::in_plateau(int j) const {
    const double t = double(j) / (n - 1);
    return t >= window_frac && t <= 1.0 - window_frac;
}

GridFunction::GridFunction(const LogGrid& g, const ScaleSpec& s) : grid(g), scale(s) {
    vals = Mat::Zero(g.n, s.dim());
}

GridFunction GridFunction::from_scalar(const LogGrid& g, const std::function<cd(double)>& f) {
    GridFunction u(g, make_fourier_scale(0, 0));
    for (int j = 0; j < g.n; ++j) u.vals(j, 0) = f(g.r(j));
    return u;
}

GridFunction GridFunction::from_vector(const LogGrid& g, const ScaleSpec& s,
                                       const std::function<Vec(double)>& f) {
    GridFunction u(g, s);
    for (int j = 0; j < g.n; ++j) {
        const Vec v = f(g.r(j));
        if (v.size() != s.dim()) throw std::invalid_argument("from_vector: dimension mismatch");
        u.vals.row(j) = v.transpose();
    }
    return u;
}

double GridFunction::l2_dr_norm() const {
    // int |u|^2 dr = int |u(e^{-y})|^2 e^{-y} dy
    double acc = 0.0;
    for (int j = 0; j < grid.n; ++j) acc += vals.row(j).squaredNorm() * grid.r(j);
    return std::sqrt(acc * grid.dy());
}

double GridFunction::l2_dy_norm() const {
    return std::sqrt(vals.squaredNorm() * grid.dy());
}

GridFunction s_gamma_map(double gamma, const GridFunction& u) {
    GridFunction v = u;
    const double a = 0.5 - gamma;
    for (int j = 0; j < u.grid.n; ++j) v.vals.row(j) *= std::exp(-a * u.grid.y(j));
    return v;
}

MellinLine mellin_transform(double gamma, const GridFunction& u) {
    const GridFunction v = s_gamma_map(gamma, u);
    MellinLine line;
    line.line_re = 0.5 - gamma;
    line.grid = u.grid;
    line.scale = u.scale;
    line.vals = Mat(u.grid.n, u.scale.dim());
    std::vector<cd> buf(u.grid.n);
    for (int m = 0; m < u.scale.dim(); ++m) {
        for (int j = 0; j < u.grid.n; ++j) buf[j] = v.vals(j, m) * u.grid.window(j);
        const auto F = fft::forward_line(u.grid.line(), buf);
        for (int k = 0; k < u.grid.n; ++k) line.vals(k, m) = F[k];
    }
    // Nyquist check: the transform must have decayed at the frequency edge
    const double peak = line.vals.cwiseAbs().maxCoeff();
    if (peak > 0.0) {
        const int edge = std::max(1, u.grid.n / 64);
        double edge_max = 0.0;
        for (int k = 0; k < edge; ++k) {
            edge_max = std::max(edge_max, line.vals.row(k).cwiseAbs().maxCoeff());
            edge_max = std::max(edge_max, line.vals.row(u.grid.n - 1 - k).cwiseAbs().maxCoeff());
        }
        if (edge_max > 1e-6 * peak)
            throw std::runtime_error("mellin_transform: grid too coarse (Nyquist check failed)");
    }
    return line;
}

GridFunction mellin_inverse(const MellinLine& line, double gamma) {
    GridFunction u(line.grid, line.scale);
    const double a = 0.5 - gamma;
    std::vector<cd> buf(line.grid.n);
    for (int m = 0; m < line.scale.dim(); ++m) {
        for (int k = 0; k < line.grid.n; ++k) buf[k] = line.vals(k, m);
        const auto f = fft::inverse_line(line.grid.line(), buf);
        for (int j = 0; j < line.grid.n; ++j) u.vals(j, m) = f[j] * std::exp(a * line.grid.y(j));
    }
    return u;
}

Vec mellin_eval(const GridFunction& u, cd w) {
    Vec acc = Vec::Zero(u.scale.dim());
    for (int j = 0; j < u.grid.n; ++j) {
        const cd ker = std::exp(-w * u.grid.y(j));
        acc += ker * u.vals.row(j).transpose();
    }
    return acc * u.grid.dy();
}

double hs_gamma_norm(double s, double gamma, const GridFunction& u,
                     const OrderReducingFamily& fam) {
    if (!(fam.scale == u.scale)) throw std::invalid_argument("hs_gamma_norm: scale mismatch");
    const double d = u.scale.base_dim;
    const MellinLine line = mellin_transform(gamma - 0.5 * d, u);  // line (d+1)/2 - gamma
    const double drho = fft::freq_grid(u.grid.line()).dx;
    double acc = 0.0;
    for (int k = 0; k < u.grid.n; ++k) {
        const RVec w = fam.diag(s, eta1(line.rho(k)));
        for (int m = 0; m < u.scale.dim(); ++m) acc += std::norm(line.vals(k, m)) * w[m] * w[m];
    }
    return std::sqrt(acc * drho / (2.0 * pi));
}

double cyl_norm(double s, const GridFunction& v, const OrderReducingFamily& fam) {
    if (!(fam.scale == v.scale)) throw std::invalid_argument("cyl_norm: scale mismatch");
    const double drho = fft::freq_grid(v.grid.line()).dx;
    std::vector<cd> buf(v.grid.n);
    double acc = 0.0;
    Mat hat(v.grid.n, v.scale.dim());
    for (int m = 0; m < v.scale.dim(); ++m) {
        for (int j = 0; j < v.grid.n; ++j) buf[j] = v.vals(j, m) * v.grid.window(j);
        const auto F = fft::forward_line(v.grid.line(), buf);
        for (int k = 0; k < v.grid.n; ++k) hat(k, m) = F[k];
    }
    const auto fg = fft::freq_grid(v.grid.line());
    for (int k = 0; k < v.grid.n; ++k) {
        const RVec w = fam.diag(s, eta1(fg.x(k)));
        for (int m = 0; m < v.scale.dim(); ++m) acc += std::norm(hat(k, m)) * w[m] * w[m];
    }
    return std::sqrt(acc * drho / (2.0 * pi));
}

MellinLineSymbol constant_line_symbol(const ScaleSpec& scale, cd value) {
    MellinLineSymbol f;
    f.order = 0.0;
    f.dep = MellinLineSymbol::Dep::Constant;
    f.kind = "constant";
    const int d = scale.dim();
    f.eval = [value, d](double, double, cd) { return Mat(value * Mat::Identity(d, d)); };
    return f;
}

MellinLineSymbol w_line_symbol(const ScaleSpec& scale) {
    MellinLineSymbol f;
    f.order = 1.0;
    f.dep = MellinLineSymbol::Dep::Constant;
    f.kind = "w";
    const int d = scale.dim();
    f.eval = [d](double, double, cd w) { return Mat(w * Mat::Identity(d, d)); };
    return f;
}

MellinLineSymbol reduction_line_symbol(const OrderReducingFamily& fam, double mu) {
    MellinLineSymbol f;
    f.order = mu;
    f.dep = MellinLineSymbol::Dep::Constant;
    f.kind = "reduction";
    f.eval = [fam, mu](double, double, cd w) {
        return Mat(fam.diag(mu, eta1(w.imag())).cast<cd>().asDiagonal());
    };
    return f;
}

GridFunction op_mellin(double gamma, const MellinLineSymbol& f, const GridFunction& u) {
    const int n = u.grid.n;
    const int dim = u.scale.dim();
    const double a = 0.5 - gamma;
    const auto fg = fft::freq_grid(u.grid.line());

    if (f.dep == MellinLineSymbol::Dep::Constant) {
        MellinLine line = mellin_transform(gamma, u);
        for (int k = 0; k < n; ++k) {
            const Mat fk = f.eval(0.0, 0.0, line.w(k));
            line.vals.row(k) = (fk * line.vals.row(k).transpose()).transpose();
        }
        return mellin_inverse(line, gamma);
    }

    if (f.dep == MellinLineSymbol::Dep::ROnly) {
        if ((dim == 1 && n > 4096) || (dim > 1 && n > 512))
            throw std::invalid_argument("op_mellin: grid too large for r-dependent symbol");
        // out(y) = e^{a y} (1/2pi) int e^{i y rho} f(e^{-y}, w) (F S_gamma u)(rho) drho
        MellinLine line = mellin_transform(gamma, u);
        GridFunction out(u.grid, u.scale);
        const double scale_f = fg.dx / (2.0 * pi);
        for (int j = 0; j < n; ++j) {
            const double yj = u.grid.y(j);
            Vec acc = Vec::Zero(dim);
            for (int k = 0; k < n; ++k) {
                const cd phase = std::polar(1.0, yj * fg.x(k));
                const Mat fk = f.eval(u.grid.r(j), 0.0, line.w(k));
                acc += phase * (fk * line.vals.row(k).transpose());
            }
            out.vals.row(j) = (std::exp(a * yj) * scale_f * acc).transpose();
        }
        return out;
    }

    // Full (r, r') dependence: Kumano-go double quadrature
    if (n > 512) throw std::invalid_argument("op_mellin: full kernels require n <= 512");
    GridFunction out(u.grid, u.scale);
    const double scale_f = fg.dx * u.grid.dy() / (2.0 * pi);
    for (int j = 0; j < n; ++j) {
        const double yj = u.grid.y(j);
        Vec acc = Vec::Zero(dim);
        for (int k = 0; k < n; ++k) {
            const cd wk(a, fg.x(k));
            Vec inner = Vec::Zero(dim);
            for (int jp = 0; jp < n; ++jp) {
                const double yp = u.grid.y(jp);
                const cd phase = std::polar(1.0, -yp * fg.x(k)) * std::exp(-a * yp) *
                                 u.grid.window(jp);
                const Mat fr = f.eval(u.grid.r(j), u.grid.r(jp), wk);
                inner += phase * (fr * u.vals.row(jp).transpose());
            }
            acc += std::polar(1.0, yj * fg.x(k)) * inner;
        }
        out.vals.row(j) = (std::exp(a * yj) * scale_f * acc).transpose();
    }
    return out;
}

OpMellinBound op_mellin_bound(const MellinLineSymbol& f, double s, double gamma,
                              const OrderReducingFamily& fam, int n_trials,
                              unsigned long long seed) {
    if (f.dep != MellinLineSymbol::Dep::Constant)
        throw std::invalid_argument("op_mellin_bound: requires an r-independent symbol");
    OpMellinBound out;
    const LogGrid grid = LogGrid::standard();
    const auto fg = fft::freq_grid(grid.line());
    const double a = 0.5 - gamma;
    // c = sup over the sampled line of || b~^{s-mu} f b^{-s} ||
    for (int k = 0; k < grid.n; ++k) {
        const cd w(a, fg.x(k));
        Mat m = f.eval(0.0, 0.0, w);
        const RVec left = fam.diag(s - f.order, eta1(w.imag()));
        const RVec right = fam.diag(-s, eta1(w.imag()));
        for (int i = 0; i < m.rows(); ++i) m.row(i) *= left[i];
        for (int j = 0; j < m.cols(); ++j) m.col(j) *= right[j];
        out.c = std::max(out.c, op_norm(m));
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int t = 0; t < n_trials; ++t) {
        const double c0 = 4.0 * unif(rng);
        const double width = 1.5 + 0.5 * unif(rng);
        const double freq = 8.0 * unif(rng);
        GridFunction u(grid, fam.scale);
        for (int m = 0; m < fam.scale.dim(); ++m) {
            const cd amp(unif(rng), unif(rng));
            for (int j = 0; j < grid.n; ++j) {
                const double y = grid.y(j);
                u.vals(j, m) = amp * std::exp(-std::pow((y - c0) / width, 2)) *
                               std::polar(1.0, freq * y);
            }
        }
        const double den = hs_gamma_norm(s, gamma, u, fam);
        if (den == 0.0) continue;
        const GridFunction v = op_mellin(gamma, f, u);
        const double num = hs_gamma_norm(s - f.order, gamma, v, fam);
        out.measured_ratio = std::max(out.measured_ratio, num / den);
    }
    out.pass = out.measured_ratio <= out.c * (1.0 + 1e-3);
    return out;
}

GridFunction fuchs_derivative(const GridFunction& u, int order) {
    // -r d/dr = d/dy on the sample values
    GridFunction out = u;
    std::vector<cd> buf(u.grid.n);
    for (int m = 0; m < u.scale.dim(); ++m) {
        for (int j = 0; j < u.grid.n; ++j) buf[j] = u.vals(j, m);
        const auto d = fft::spectral_derivative(u.grid.line(), buf, order);
        for (int j = 0; j < u.grid.n; ++j) out.vals(j, m) = d[j];
    }
    return out;
}

namespace {

// inverse Fourier kernel of atilde(theta) = e^{-theta^2}:  (1/2pi) int e^{i tau theta} atilde
double gauss_kernel(double tau) { return std::exp(-0.25 * tau * tau) / (2.0 * std::sqrt(pi)); }

// smooth taper for the quotient-variable cut: 1 on [-t0, t0], 0 outside [-t1, t1]
double quotient_taper(double tau, double t0, double t1) {
    const double a = std::abs(tau);
    if (a <= t0) return 1.0;
    if (a >= t1) return 0.0;
    return 1.0 - smoothstep((a - t0) / (t1 - t0));
}

GridFunction apply_fuchs_power(const GridFunction& u, const std::vector<cd>& poly) {
    // sum_m poly[m] * (-i)^m * prod_{j<m} (-d/dy - j) u   (= Op_r of sum poly[m] (r rho)^m)
    GridFunction acc(u.grid, u.scale);
    for (size_t m = 0; m < poly.size(); ++m) {
        if (poly[m] == cd(0.0)) continue;
        GridFunction term = u;
        for (size_t j = 0; j < m; ++j) {
            GridFunction d = fuchs_derivative(term, 1);
            term.vals = -d.vals - double(j) * term.vals;
        }
        cd factor = poly[m];
        for (size_t j = 0; j < m; ++j) factor *= cd(0.0, -1.0);
        acc.vals += factor * term.vals;
    }
    return acc;
}

}  // namespace

GridFunction op_r_apply(const EntireSymbol& a, const GridFunction& u) {
    if (u.scale.dim() != 1 && a.kind == EntireSymbol::Kind::GaussianKernel)
        throw std::invalid_argument("op_r_apply: Gaussian kernel path supports the trivial base");
    GridFunction out(u.grid, u.scale);
    switch (a.kind) {
        case EntireSymbol::Kind::Constant:
            out.vals = a.value * u.vals;
            break;
        case EntireSymbol::Kind::Polynomial:
            out = apply_fuchs_power(u, a.poly);
            break;
        case EntireSymbol::Kind::GaussianKernel: {
            const int n = u.grid.n;
            for (int i = 0; i < n; ++i) {
                cd acc = 0.0;
                const double yi = u.grid.y(i);
                for (int j = 0; j < n; ++j) {
                    const double ratio = std::exp(yi - u.grid.y(j));  // r_j / r_i
                    if (ratio > 1e8) continue;
                    acc += ratio * gauss_kernel(1.0 - ratio) * u.vals(j, 0);
                }
                out.vals(i, 0) = acc * u.grid.dy();
            }
            break;
        }
    }
    for (int j = 0; j < u.grid.n; ++j) out.vals.row(j) *= a.profile(u.grid.r(j));
    return out;
}

QuantizeResult mellin_quantize(const EntireSymbol& a, double delta, const LogGrid& grid) {
    QuantizeResult res;
    res.discrepancy.name = "mellin-quantisation";
    const ScaleSpec trivial = make_fourier_scale(0, 0);
    const bool has_profile = static_cast<bool>(a.r_profile);

    switch (a.kind) {
        case EntireSymbol::Kind::Constant: {
            res.h = constant_line_symbol(trivial, a.value);
            break;
        }
        case EntireSymbol::Kind::Polynomial: {
            // Op_r((r rho)^m) = r^m D_r^m, Mellin symbol (-i)^m prod_{j<m} (-w - j)
            const std::vector<cd> poly = a.poly;
            res.h.order = double(poly.empty() ? 0 : poly.size() - 1);
            res.h.dep = MellinLineSymbol::Dep::Constant;
            res.h.kind = "quantized-polynomial";
            res.h.eval = [poly](double, double, cd w) {
                cd acc = 0.0;
                for (size_t m = 0; m < poly.size(); ++m) {
                    cd term = poly[m];
                    for (size_t j = 0; j < m; ++j) term *= cd(0.0, -1.0) * (-w - double(j));
                    acc += term;
                }
                Mat out(1, 1);
                out(0, 0) = acc;
                return out;
            };
            break;
        }
        case EntireSymbol::Kind::GaussianKernel: {
            // h(w) = int e^{-w tau} psi(tau) e^{tau} k(1 - e^{tau}) dtau, the Mellin
            // transform of the tapered quotient kernel; entire in w by compact support.
            const int n_tau = 2048;
            const double tau_max = 6.0, t0 = 2.0, t1 = 5.0;
            std::vector<double> taus(n_tau), q(n_tau);
            const double dtau = 2.0 * tau_max / n_tau;
            for (int j = 0; j < n_tau; ++j) {
                const double tau = -tau_max + (j + 0.5) * dtau;
                taus[j] = tau;
                q[j] = quotient_taper(tau, t0, t1) * std::exp(tau) * gauss_kernel(1.0 - std::exp(tau));
            }
            res.h.order = -40.0;  // smoothing along every line
            res.h.dep = MellinLineSymbol::Dep::Constant;
            res.h.kind = "quantized-gaussian";
            res.h.eval = [taus, q, dtau](double, double, cd w) {
                cd acc = 0.0;
                for (size_t j = 0; j < taus.size(); ++j) acc += std::exp(-w * taus[j]) * q[j];
                Mat out(1, 1);
                out(0, 0) = acc * dtau;
                return out;
            };
            break;
        }
    }
    if (has_profile) {
        auto base = res.h.eval;
        auto prof = a.r_profile;
        // the separable factor h0(w) is cached per w; the r-dependence is the profile
        auto cache = std::make_shared<std::map<std::pair<double, double>, Mat>>();
        res.h.dep = MellinLineSymbol::Dep::ROnly;
        res.h.eval = [base, prof, cache](double r, double rp, cd w) {
            const auto key = std::make_pair(w.real(), w.imag());
            auto it = cache->find(key);
            if (it == cache->end()) it = cache->emplace(key, base(1.0, rp, w)).first;
            return Mat(prof(r) * it->second);
        };
    }

    // discrepancy (op_M^delta(h) - Op_r(a)) on oscillatory test functions
    const std::vector<double> omegas{1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
    std::vector<double> errs;
    for (double om : omegas) {
        GridFunction u = GridFunction::from_scalar(grid, [om](double r) {
            const double y = -std::log(r);
            return std::exp(-y * y / 9.0) * std::polar(1.0, om * y);
        });
        const GridFunction via_mellin = op_mellin(delta, res.h, u);
        const GridFunction direct = op_r_apply(a, u);
        GridFunction diff = via_mellin;
        diff.vals -= direct.vals;
        const double den = u.l2_dy_norm();
        errs.push_back(diff.l2_dy_norm() / den);
    }
    double emax = 0.0;
    for (double e : errs) emax = std::max(emax, e);
    for (size_t i = 0; i < omegas.size(); ++i)
        res.discrepancy.set("err_omega" + std::to_string(int(omegas[i])), errs[i]);
    if (emax < 1e-9) {
        res.discrepancy.set("decay_exponent", -40.0);
        res.discrepancy.notes.push_back("discrepancy at floor");
    } else {
        const PowerFit fit = fit_power_law(omegas, errs, 1e-14);
        res.discrepancy.set("decay_exponent", fit.exponent);
        res.discrepancy.require(fit.exponent < -4.0, "discrepancy decays slower than omega^-4");
    }
    return res;
}

}  // namespace mellinlab
