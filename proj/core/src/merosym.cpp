#include "mellinlab/merosym.hpp"

#include "mellinlab/linalg.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>

namespace mellinlab {

Mat MeroSymbol::singular_part(cd w) const {
    Mat acc = Mat::Zero(codomain.dim(), domain.dim());
    for (const auto& pd : poles) {
        cd inv = 1.0 / (w - pd.p);
        cd pw = inv;
        for (int k = 0; k <= pd.m; ++k) {
            if (k < static_cast<int>(pd.laurent.size())) acc += pw * pd.laurent[k];
            pw *= inv;
        }
    }
    return acc;
}

Mat MeroSymbol::holo_part(cd w) const {
    if (holo) return holo(w);
    if (strip) {
        // w = beta + i zeta with zeta = Im w + i (beta - Re w)
        return strip->eval(cd(w.imag(), strip_line - w.real()));
    }
    return Mat::Zero(codomain.dim(), domain.dim());
}

MeroSymbol mero_zero(const ScaleSpec& scale) {
    MeroSymbol m;
    m.order = -40.0;
    m.domain = scale;
    m.codomain = scale;
    const int d = scale.dim();
    m.holo = [d](cd) { return Mat(Mat::Zero(d, d)); };
    return m;
}

MeroSymbol mero_constant(const ScaleSpec& scale, cd value) {
    MeroSymbol m = mero_zero(scale);
    m.order = 0.0;
    const int d = scale.dim();
    m.holo = [d, value](cd) { return Mat(value * Mat::Identity(d, d)); };
    return m;
}

MeroSymbol mero_entire(const ScaleSpec& scale, double order, std::function<Mat(cd)> f) {
    MeroSymbol m = mero_zero(scale);
    m.order = order;
    m.holo = std::move(f);
    return m;
}

MeroSymbol mero_pole(const ScaleSpec& scale, cd p, const std::vector<Mat>& laurent) {
    MeroSymbol m = mero_zero(scale);
    PoleDatum pd;
    pd.p = p;
    pd.m = static_cast<int>(laurent.size()) - 1;
    pd.laurent = laurent;
    m.poles.push_back(std::move(pd));
    return m;
}

MeroSymbol mero_scalar_pole(cd c, cd p) {
    Mat l(1, 1);
    l(0, 0) = c;
    return mero_pole(make_fourier_scale(0, 0), p, {l});
}

MeroSymbol mero_add(const MeroSymbol& a, const MeroSymbol& b) {
    MeroSymbol out;
    out.order = std::max(a.order, b.order);
    out.domain = a.domain;
    out.codomain = a.codomain;
    auto ac = a, bc = b;
    out.holo = [ac, bc](cd w) { return Mat(ac.holo_part(w) + bc.holo_part(w)); };
    out.poles = a.poles;
    for (const auto& pd : b.poles) {
        bool merged = false;
        for (auto& q : out.poles)
            if (std::abs(q.p - pd.p) < 1e-10) {
                q.m = std::max(q.m, pd.m);
                q.laurent.resize(q.m + 1, Mat::Zero(a.codomain.dim(), a.domain.dim()));
                for (int k = 0; k <= pd.m && k < static_cast<int>(pd.laurent.size()); ++k)
                    q.laurent[k] += pd.laurent[k];
                merged = true;
                break;
            }
        if (!merged) out.poles.push_back(pd);
    }
    return out;
}

MeroSymbol mero_scale(const MeroSymbol& a, cd factor) {
    MeroSymbol out = a;
    auto ac = a;
    out.holo = [ac, factor](cd w) { return Mat(factor * ac.holo_part(w)); };
    out.strip.reset();
    for (auto& pd : out.poles)
        for (auto& l : pd.laurent) l *= factor;
    return out;
}

namespace {

double min_pole_gap(const std::vector<cd>& pts, cd at) {
    double g = 1e300;
    for (const cd& q : pts)
        if (std::abs(q - at) > 1e-12) g = std::min(g, std::abs(q - at));
    return g;
}

Mat truncate_rank(const Mat& a, double rel) {
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return a;
    Mat out = Mat::Zero(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) >= rel * s(0))
            out += s(i) * svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
    return out;
}

}  // namespace

MeroSymbol compose_mero(const MeroSymbol& h, const MeroSymbol& f) {
    if (!(h.domain == f.codomain)) throw std::invalid_argument("compose_mero: scale mismatch");
    MeroSymbol out;
    out.order = h.order + f.order;
    out.domain = f.domain;
    out.codomain = h.codomain;

    auto hc = h, fc = f;
    auto product = [hc, fc](cd w) { return Mat(hc.eval(w) * fc.eval(w)); };

    // merged pole locations; coincident poles combine with added orders
    std::vector<cd> locs;
    std::vector<int> mult;  // Laurent depth datum of the product at each location
    for (const auto& pd : h.poles) {
        locs.push_back(pd.p);
        mult.push_back(pd.m);
    }
    for (const auto& pd : f.poles) {
        bool found = false;
        for (size_t i = 0; i < locs.size(); ++i)
            if (std::abs(locs[i] - pd.p) < 1e-10) {
                mult[i] += pd.m + 1;
                found = true;
            }
        if (!found) {
            locs.push_back(pd.p);
            mult.push_back(pd.m);
        }
    }
    // collision guard: distinct but unresolvably close poles
    for (size_t i = 0; i < locs.size(); ++i)
        for (size_t j = i + 1; j < locs.size(); ++j)
            if (std::abs(locs[i] - locs[j]) < 2e-4)
                throw std::runtime_error("compose_mero: contour collision between pole clusters");

    for (size_t i = 0; i < locs.size(); ++i) {
        const double radius = std::min(0.5, 0.5 * min_pole_gap(locs, locs[i]));
        auto coeffs = contour::laurent_coefficients(product, locs[i], radius, mult[i]);
        double scale0 = 1e-300;
        for (const auto& c : coeffs) scale0 = std::max(scale0, c.norm());
        PoleDatum pd;
        pd.p = locs[i];
        int top = -1;
        for (int k = 0; k <= mult[i]; ++k)
            if (coeffs[k].norm() > 1e-11 * scale0) top = k;
        if (top < 0) continue;  // singular parts cancelled
        pd.m = top;
        for (int k = 0; k <= top; ++k) pd.laurent.push_back(coeffs[k]);
        out.poles.push_back(std::move(pd));
    }

    auto poles_copy = out.poles;
    const int rows = out.codomain.dim(), cols = out.domain.dim();
    out.holo = [product, poles_copy, rows, cols](cd w) {
        Mat sing = Mat::Zero(rows, cols);
        for (const auto& pd : poles_copy) {
            cd inv = 1.0 / (w - pd.p);
            cd pw = inv;
            for (int k = 0; k <= pd.m; ++k) {
                sing += pw * pd.laurent[k];
                pw *= inv;
            }
        }
        return Mat(product(w) - sing);
    };
    return out;
}

namespace {

// det(1+m) with the known pole factors cleared; entire inside the search strip
contour::ScalarFn cleared_determinant(const MeroSymbol& m) {
    auto mc = m;
    const int d = m.dim();
    return [mc, d](cd w) {
        Mat a = Mat::Identity(d, d) + mc.eval(w);
        cd det = a.partialPivLu().determinant();
        for (const auto& pd : mc.poles) det *= std::pow(w - pd.p, double(d * (pd.m + 1)));
        return det;
    };
}

}  // namespace

MeroSymbol invert_one_plus(const MeroSymbol& m, const InvertConfig& cfg) {
    const int d = m.dim();
    const Mat eye = Mat::Identity(d, d);

    contour::Rect strip;
    if (cfg.search) {
        strip = *cfg.search;
    } else {
        double re_lo = cfg.line_hint - 2.0, re_hi = cfg.line_hint + 2.0, im = 6.0;
        for (const auto& pd : m.poles) {
            re_lo = std::min(re_lo, pd.p.real() - 2.0);
            re_hi = std::max(re_hi, pd.p.real() + 2.0);
            im = std::max(im, std::abs(pd.p.imag()) + 6.0);
        }
        strip = {re_lo, re_hi, -im, im};
    }

    // find an invertible pole-free line
    auto line_ok = [&](double beta) {
        for (const auto& pd : m.poles)
            if (std::abs(pd.p.real() - beta) < 0.1) return false;
        for (int i = 0; i <= 24; ++i) {
            const double tau = strip.im_lo + (strip.im_hi - strip.im_lo) * i / 24.0;
            if (min_singular_value(eye + m.eval(cd(beta, tau))) < 1e-6) return false;
        }
        return true;
    };
    double beta_line = cfg.line_hint;
    bool found_line = line_ok(beta_line);
    for (double off = 0.15; !found_line && off <= 3.0; off += 0.17) {
        if (line_ok(cfg.line_hint + off)) {
            beta_line = cfg.line_hint + off;
            found_line = true;
        } else if (line_ok(cfg.line_hint - off)) {
            beta_line = cfg.line_hint - off;
            found_line = true;
        }
    }
    if (!found_line) throw std::runtime_error("invert_one_plus: no invertible line found");

    // invertibility must survive next to each pole, else a det zero collides with it
    for (const auto& pd : m.poles) {
        double worst = 1e300;
        for (int i = 0; i < 12; ++i) {
            const cd z = pd.p + std::polar(5e-4, 2.0 * pi * i / 12.0);
            worst = std::min(worst, min_singular_value(eye + m.eval(z)));
        }
        if (worst < 1e-6)
            throw std::runtime_error("invert_one_plus: contour collision at a pole of m");
    }

    std::vector<cd> exclusions;
    for (const auto& pd : m.poles) exclusions.push_back(pd.p);
    const auto det_fn = cleared_determinant(m);
    const auto zeros = contour::find_zeros(det_fn, strip, exclusions, 1e-4);

    auto mc = m;
    auto g_fn = [mc, d, eye](cd w) {
        return Mat((eye + mc.eval(w)).partialPivLu().solve(eye) - eye);
    };

    MeroSymbol out = mero_zero(m.domain);
    out.domain = m.domain;
    out.codomain = m.codomain;
    out.order = -40.0;

    std::vector<cd> all_sing = exclusions;
    for (const auto& z : zeros) all_sing.push_back(z.w);
    for (const auto& z : zeros) {
        const double radius = std::min(0.5, 0.5 * min_pole_gap(all_sing, z.w));
        if (radius < 1e-6) throw std::runtime_error("invert_one_plus: contour collision");
        auto coeffs =
            contour::laurent_coefficients(g_fn, z.w, radius, z.multiplicity - 1, cfg.contour_nodes);
        double scale0 = 1e-300;
        for (const auto& c : coeffs) scale0 = std::max(scale0, c.norm());
        PoleDatum pd;
        pd.p = z.w;
        int top = -1;
        for (int k = 0; k < static_cast<int>(coeffs.size()); ++k) {
            coeffs[k] = truncate_rank(coeffs[k], cfg.rank_trunc);
            if (coeffs[k].norm() > 1e-11 * scale0) top = k;
        }
        if (top < 0) continue;
        pd.m = top;
        for (int k = 0; k <= top; ++k) pd.laurent.push_back(coeffs[k]);
        out.poles.push_back(std::move(pd));
    }

    auto poles_copy = out.poles;
    out.holo = [g_fn, poles_copy, d](cd w) {
        Mat sing = Mat::Zero(d, d);
        for (const auto& pd : poles_copy) {
            cd inv = 1.0 / (w - pd.p);
            cd pw = inv;
            for (int k = 0; k <= pd.m; ++k) {
                sing += pw * pd.laurent[k];
                pw *= inv;
            }
        }
        return Mat(g_fn(w) - sing);
    };
    return out;
}

std::vector<contour::Zero> holo_spectrum(const MeroSymbol& h, const contour::Rect& strip) {
    if (!h.poles.empty())
        throw std::invalid_argument("holo_spectrum: expects a holomorphic symbol");
    auto hc = h;
    auto det_fn = [hc](cd w) { return cd(hc.eval(w).partialPivLu().determinant()); };
    const auto zeros = contour::find_zeros(det_fn, strip, {}, 1e-4);
    // invertibility off D: smallest singular value at strip samples
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) {
            const cd w(strip.re_lo + strip.width() * i / 10.0,
                       strip.im_lo + strip.height() * j / 10.0);
            bool near = false;
            for (const auto& z : zeros)
                if (std::abs(w - z.w) < 0.2) near = true;
            if (near) continue;
            if (min_singular_value(hc.eval(w)) <= 1e-8)
                throw std::runtime_error("holo_spectrum: symbol nearly singular off D");
        }
    return zeros;
}

int winding_number(const MeroSymbol& f, double beta, double im_max) {
    auto fc = f;
    const int d = f.dim();
    auto det_fn = [fc, d](cd w) {
        return cd((Mat::Identity(d, d) + fc.eval(w)).partialPivLu().determinant());
    };
    const auto res = contour::line_winding(det_fn, beta, -im_max, im_max, 1024);
    if (res.min_abs <= 1e-6) throw std::runtime_error("winding_number: symbol vanishes on line");
    if (res.residue >= 0.01)
        throw std::runtime_error("winding_number: rounding residue too large");
    return res.winding;
}

MeroSymbol make_index_symbol(int k, double gamma) {
    const double beta = 0.5 - gamma;
    const ScaleSpec trivial = make_fourier_scale(0, 0);
    kco::LineSymbol prof;
    prof.order = -40.0;
    prof.domain = trivial;
    prof.codomain = trivial;
    Mat one(1, 1);
    one(0, 0) = 1.0;
    prof.terms.push_back({[k](double tau) {
                              const double s = 0.5 * (1.0 + std::tanh(tau));
                              return std::polar(1.0, 2.0 * pi * k * s) - 1.0;
                          },
                          one});
    kco::CutoffFunction phi;
    phi.shape = kco::CutoffFunction::Shape::FlatTop;
    phi.support = 10.0;
    phi.flat_eps = 0.1;
    kco::ThetaGrid tg;
    tg.theta_max = 16.0;
    tg.n = 16384;
    auto h = std::make_shared<kco::HoloSymbol>(kco::kernel_cutoff(phi, prof, tg));

    MeroSymbol out = mero_zero(trivial);
    out.order = -40.0;
    out.strip = h;
    out.strip_line = beta;
    out.holo = nullptr;
    return out;
}

namespace {

double omega_tilde_cutoff(double r) { return 1.0 - smoothstep((r - 0.55) / 0.2); }

// convolution kernel of op_M^gamma(f) in y = -log r on the line Re w = beta
std::function<cd(double)> conv_kernel(const MeroSymbol& f, double beta) {
    if (f.strip && f.poles.empty() && f.strip->terms.size() >= 1 && f.dim() == 1) {
        auto strip = f.strip;
        const double shift = f.strip_line - beta;
        return [strip, shift](double zeta) {
            return std::exp(shift * zeta) * strip->scalar_kernel_at(zeta);
        };
    }
    // generic slow path: quadrature over the line
    auto fc = f;
    const int n_tau = 4096;
    const double t_max = 60.0;
    auto samples = std::make_shared<std::vector<cd>>(n_tau);
    const double dtau = 2.0 * t_max / n_tau;
    for (int i = 0; i < n_tau; ++i) {
        const double tau = -t_max + (i + 0.5) * dtau;
        (*samples)[i] = fc.eval(cd(beta, tau))(0, 0);
    }
    return [samples, dtau, t_max](double zeta) {
        cd acc = 0.0;
        for (int i = 0; i < static_cast<int>(samples->size()); ++i) {
            const double tau = -t_max + (i + 0.5) * dtau;
            acc += (*samples)[i] * std::polar(1.0, zeta * tau);
        }
        return acc * dtau / (2.0 * pi);
    };
}

struct SectionGrid {
    double y_min = -4.0, y_max = 20.0;
    int n = 256;
    double dy() const { return (y_max - y_min) / n; }
    double y(int j) const { return y_min + (j + 0.5) * dy(); }
    double r(int j) const { return std::exp(-y(j)); }
};

// finite section of 1 + omega op_M(f) omega~, optionally glued with a partner
// symbol across a smooth partition chi at y0 (r about 1/4)
Mat assemble_section(const SectionGrid& g, const std::function<cd(double)>& kerA,
                     const std::function<cd(double)>* kerB) {
    const int n = g.n;
    Mat a = Mat::Identity(n, n);
    const double y0 = std::log(4.0), h0 = 0.8;
    for (int i = 0; i < n; ++i) {
        const double wi = omega_cutoff(g.r(i));
        if (wi == 0.0) continue;
        const double chi_i = smoothstep((g.y(i) - y0) / h0);
        for (int j = 0; j < n; ++j) {
            const double wj = omega_tilde_cutoff(g.r(j));
            if (wj == 0.0) continue;
            const double zeta = g.y(i) - g.y(j);
            cd kv;
            if (kerB == nullptr) {
                kv = kerA(zeta);
            } else {
                const double chi_j = smoothstep((g.y(j) - y0) / h0);
                kv = chi_i * kerA(zeta) * chi_j +
                     (1.0 - chi_i) * (*kerB)(zeta) * (1.0 - chi_j);
            }
            a(i, j) += wi * kv * wj * g.dy();
        }
    }
    return a;
}

// index of a finite section: genuine kernel minus genuine cokernel dimensions,
// classified by localization away from the r -> 0 truncation edge
int section_index(const Mat& a, const SectionGrid& g) {
    Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cut = 1e-8 * s(0);
    const double y_edge = g.y_max - 0.15 * (g.y_max - g.y_min);
    auto edge_mass = [&](const Vec& v) {
        double m = 0.0;
        for (int j = 0; j < g.n; ++j)
            if (g.y(j) > y_edge) m += std::norm(v[j]);
        return m / v.squaredNorm();
    };
    int ker = 0, coker = 0;
    for (int i = 0; i < g.n; ++i) {
        if (s(i) >= cut) continue;
        if (edge_mass(svd.matrixV().col(i)) < 0.5) ++ker;
        if (edge_mass(svd.matrixU().col(i)) < 0.5) ++coker;
    }
    return ker - coker;
}

}  // namespace

ToeplitzIndex toeplitz_index_oracle(const MeroSymbol& f, double gamma,
                                    const std::vector<int>& sizes) {
    if (f.dim() != 1)
        throw std::invalid_argument("toeplitz_index_oracle: trivial base scale only");
    const double beta = 0.5 - gamma;
    const auto ker = conv_kernel(f, beta);
    ToeplitzIndex out;
    out.sizes = sizes;
    for (int n : sizes) {
        SectionGrid g;
        g.n = n;
        const Mat a = assemble_section(g, ker, nullptr);
        out.per_size.push_back(section_index(a, g));
    }
    out.stable = true;
    for (int v : out.per_size)
        if (v != out.per_size.front()) out.stable = false;
    out.index = out.per_size.front();
    return out;
}

Report relative_index_check(const MeroSymbol& fA, const MeroSymbol& fB, double gamma) {
    Report rep;
    rep.name = "relative-index";
    const double beta = 0.5 - gamma;
    const auto kerA = conv_kernel(fA, beta);
    const auto kerB = conv_kernel(fB, beta);

    auto stable_index = [&](const std::function<cd(double)>& ka,
                            const std::function<cd(double)>* kb, const char* label) {
        std::vector<int> vals;
        for (int n : {128, 256, 512}) {
            SectionGrid g;
            g.n = n;
            vals.push_back(section_index(assemble_section(g, ka, kb), g));
        }
        for (int v : vals)
            if (v != vals.front())
                throw std::runtime_error(std::string("relative_index_check: inconclusive oracle for ") +
                                         label);
        return vals.front();
    };

    const int indA = stable_index(kerA, nullptr, "A");
    const int indB = stable_index(kerB, nullptr, "B");
    const int indAB = stable_index(kerA, &kerB, "glued(A,B)");
    const int indBA = stable_index(kerB, &kerA, "glued(B,A)");
    rep.set("ind_A", indA);
    rep.set("ind_B", indB);
    rep.set("ind_glued_AB", indAB);
    rep.set("ind_glued_BA", indBA);
    rep.require(indA - indB == indAB - indBA, "relative index identity violated");
    return rep;
}

MeroSymbol elliptic_inverse(const MeroSymbol& g, double beta_hint) {
    const int d = g.dim();
    const Mat eye = Mat::Identity(d, d);

    // locate an invertible line
    auto line_ok = [&](double beta) {
        for (const auto& pd : g.poles)
            if (std::abs(pd.p.real() - beta) < 0.15) return false;
        for (int i = 0; i <= 16; ++i) {
            const double tau = -12.0 + 24.0 * i / 16.0;
            if (min_singular_value(g.eval(cd(beta, tau))) < 1e-6) return false;
        }
        return true;
    };
    double beta = beta_hint;
    bool ok = line_ok(beta);
    for (double off = 0.2; !ok && off <= 2.0; off += 0.2) {
        if (line_ok(beta_hint + off)) {
            beta = beta_hint + off;
            ok = true;
        } else if (line_ok(beta_hint - off)) {
            beta = beta_hint - off;
            ok = true;
        }
    }
    if (!ok) throw std::runtime_error("elliptic_inverse: no invertible line found (not elliptic)");

    // kernel cut-off of the line inverse, sampled on the dual grid
    kco::ThetaGrid tg;
    tg.theta_max = 16.0;
    tg.n = 16384;
    const auto fg = fft::freq_grid(tg.line());
    auto samples = std::make_shared<std::vector<Mat>>(tg.n);
    {
        auto gc = g;
        for (int k = 0; k < tg.n; ++k)
            (*samples)[k] = gc.eval(cd(beta, fg.x(k))).partialPivLu().solve(eye);
    }
    kco::LineSymbol inv_line;
    inv_line.order = -g.order;
    inv_line.domain = g.codomain;
    inv_line.codomain = g.domain;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            Mat e = Mat::Zero(d, d);
            e(r, c) = 1.0;
            const double x0 = fg.x0, dx = fg.dx;
            const int n = tg.n;
            inv_line.terms.push_back(
                {[samples, x0, dx, n, r, c](double rho) {
                     int idx = static_cast<int>(std::lround((rho - x0) / dx));
                     idx = std::clamp(idx, 0, n - 1);
                     return (*samples)[idx](r, c);
                 },
                 e});
        }
    kco::CutoffFunction phi;
    phi.shape = kco::CutoffFunction::Shape::FlatTop;
    phi.support = 10.0;
    phi.flat_eps = 0.1;
    auto hinv_strip = std::make_shared<kco::HoloSymbol>(kco::kernel_cutoff(phi, inv_line, tg));

    MeroSymbol hinv = mero_zero(g.codomain);
    hinv.domain = g.codomain;
    hinv.codomain = g.domain;
    hinv.order = -g.order;
    hinv.strip = hinv_strip;
    hinv.strip_line = beta;
    hinv.holo = nullptr;

    // residual 1 + m := g hinv, then m^{(-1)} and f := hinv (1 + m^{(-1)})
    MeroSymbol gh = compose_mero(g, hinv);
    MeroSymbol m = mero_add(gh, mero_constant(g.codomain, -1.0));
    m.order = -40.0;
    InvertConfig icfg;
    icfg.line_hint = beta;
    MeroSymbol minv = invert_one_plus(m, icfg);
    MeroSymbol f = mero_add(hinv, compose_mero(hinv, minv));
    f.order = -g.order;
    return f;
}

double one_plus_residual(const MeroSymbol& m, const MeroSymbol& minv,
                         const std::vector<double>& betas, double im_max) {
    const int d = m.dim();
    const Mat eye = Mat::Identity(d, d);
    double worst = 0.0;
    for (double beta : betas)
        for (int i = 0; i <= 24; ++i) {
            const cd w(beta, -im_max + 2.0 * im_max * i / 24.0);
            const Mat r = (eye + m.eval(w)) * (eye + minv.eval(w)) - eye;
            worst = std::max(worst, op_norm(r));
        }
    return worst;
}

Report verify_order_drop(const kco::HoloSymbol& h, double beta, double eps,
                         const OrderReducingFamily& dom_fam, const OrderReducingFamily& cod_fam) {
    Report rep;
    rep.name = "order-drop";
    const double mu = h.order;
    const std::vector<double> rhos{1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0};
    const std::vector<double> svals{-1.0, 0.0, 1.0};
    double sup = 0.0;
    for (double delta : {beta, beta + 0.4, beta - 0.4}) {
        double line_sup = 0.0;
        for (double rho : rhos)
            for (double s : svals) {
                const Mat v = h.eval(cd(rho, delta));
                const RVec left = cod_fam.diag(s - (mu - eps), eta1(rho));
                const RVec right = dom_fam.diag(-s, eta1(rho));
                Mat mm = v;
                for (int r = 0; r < mm.rows(); ++r) mm.row(r) *= left[r];
                for (int c = 0; c < mm.cols(); ++c) mm.col(c) *= right[c];
                line_sup = std::max(line_sup, op_norm(mm));
            }
        rep.set("seminorm_delta" + std::to_string(delta), line_sup);
        sup = std::max(sup, line_sup);
    }
    rep.set("sup", sup);
    rep.require(std::isfinite(sup), "non-finite order-drop seminorm");
    return rep;
}

}  // namespace mellinlab
