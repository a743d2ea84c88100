#include "mellinlab/conormal.hpp"

#include "mellinlab/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <sstream>

namespace mellinlab {

RProfile make_r_profile(const std::string& name) {
    RProfile p;
    p.name = name;
    if (name == "const") {
        p.f = nullptr;
    } else if (name == "exp") {
        p.f = [](double r) { return std::exp(-r); };
    } else if (name == "rational") {
        p.f = [](double r) { return 1.0 / (1.0 + r); };
    } else {
        throw std::invalid_argument("unknown r-profile: " + name);
    }
    return p;
}

GridFunction apply_fuchs(const FuchsOperator& a, const GridFunction& u) {
    if (!(u.scale == a.scale)) throw std::invalid_argument("apply_fuchs: scale mismatch");
    GridFunction out(u.grid, u.scale);
    for (const auto& c : a.coeffs) {
        GridFunction d = fuchs_derivative(u, c.j);  // (-r d/dr)^j u
        for (int row = 0; row < u.grid.n; ++row) {
            const Vec v = c.matrix * d.vals.row(row).transpose();
            out.vals.row(row) += c.profile(u.grid.r(row)) * v.transpose();
        }
    }
    for (int row = 0; row < u.grid.n; ++row)
        out.vals.row(row) *= std::pow(u.grid.r(row), -double(a.order));
    return out;
}

Mat OperatorPencil::eval(cd w) const {
    if (coeff.empty()) throw std::runtime_error("OperatorPencil: empty");
    Mat acc = Mat::Zero(coeff[0].rows(), coeff[0].cols());
    cd p = 1.0;
    for (const auto& c : coeff) {
        acc += p * c;
        p *= w;
    }
    return acc;
}

bool OperatorPencil::diagonal() const {
    for (const auto& c : coeff)
        if (!c.isDiagonal(1e-14)) return false;
    return true;
}

OperatorPencil conormal_symbol(const FuchsOperator& a) {
    OperatorPencil p;
    const int d = a.scale.dim();
    p.coeff.assign(a.order + 1, Mat::Zero(d, d));
    for (const auto& c : a.coeffs) {
        if (c.j < 0 || c.j > a.order) throw std::invalid_argument("conormal_symbol: bad index j");
        p.coeff[c.j] += c.profile.at_zero() * c.matrix;
    }
    return p;
}

namespace {

std::vector<cd> scalar_poly_roots(const std::vector<cd>& c) {
    // roots of sum c[j] w^j via the companion matrix of the monic polynomial
    int deg = static_cast<int>(c.size()) - 1;
    while (deg > 0 && std::abs(c[deg]) == 0.0) --deg;
    if (deg <= 0) return {};
    Mat comp = Mat::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -c[i] / c[deg];
    Eigen::ComplexEigenSolver<Mat> es(comp, false);
    std::vector<cd> roots;
    for (int i = 0; i < deg; ++i) roots.push_back(es.eigenvalues()(i));
    return roots;
}

std::vector<SpectrumPoint> dedupe(std::vector<cd> pts, double tol) {
    std::vector<SpectrumPoint> out;
    std::sort(pts.begin(), pts.end(), [](cd a, cd b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    for (const cd& p : pts) {
        if (!out.empty() && std::abs(out.back().w - p) < tol)
            out.back().multiplicity += 1;
        else
            out.push_back({p, 1});
    }
    return out;
}

}  // namespace

std::vector<SpectrumPoint> pencil_spectrum(const OperatorPencil& p, double re_min, double re_max,
                                           double im_max) {
    if (!(re_min <= re_max) || !std::isfinite(re_min) || !std::isfinite(re_max) ||
        !std::isfinite(im_max))
        throw std::invalid_argument("pencil_spectrum: strip must be bounded");
    const int deg = p.degree();
    const int d = p.dim();
    if (deg < 1) return {};
    if (min_singular_value(p.coeff[deg]) < 1e-12)
        throw std::invalid_argument("pencil_spectrum: singular leading coefficient");

    std::vector<cd> eigs;
    if (p.diagonal()) {
        for (int m = 0; m < d; ++m) {
            std::vector<cd> c(deg + 1);
            for (int j = 0; j <= deg; ++j) c[j] = p.coeff[j](m, m);
            const auto roots = scalar_poly_roots(c);
            eigs.insert(eigs.end(), roots.begin(), roots.end());
        }
    } else {
        // companion linearization of the matrix polynomial: identity blocks on
        // the superdiagonal, -A_deg^{-1} A_j in the last block row
        const int n = deg * d;
        Mat comp = Mat::Zero(n, n);
        const Mat lead_inv = p.coeff[deg].partialPivLu().inverse();
        for (int i = 0; i + 1 < deg; ++i)
            comp.block(i * d, (i + 1) * d, d, d) = Mat::Identity(d, d);
        for (int j = 0; j < deg; ++j)
            comp.block((deg - 1) * d, j * d, d, d) = -(lead_inv * p.coeff[j]);
        Eigen::ComplexEigenSolver<Mat> es(comp, false);
        for (int i = 0; i < n; ++i) eigs.push_back(es.eigenvalues()(i));
    }

    std::vector<cd> in_strip;
    for (const cd& e : eigs)
        if (e.real() >= re_min - 1e-12 && e.real() <= re_max + 1e-12 && std::abs(e.imag()) <= im_max)
            in_strip.push_back(e);
    return dedupe(std::move(in_strip), 1e-8);
}

std::string WeightReport::text() const {
    std::ostringstream os;
    os << "strip Re w in [" << strip_lo << ", " << strip_hi << "]\n";
    os << "non-invertibility points D:\n";
    for (const auto& p : points)
        os << "  w = " << p.w.real() << (p.w.imag() < 0 ? " - " : " + ")
           << std::abs(p.w.imag()) << "i  (multiplicity " << p.multiplicity << ")\n";
    os << "forbidden weights:\n";
    for (double g : forbidden_gammas) os << "  gamma = " << g << "\n";
    os << "admissible intervals:\n";
    for (const auto& iv : admissible)
        os << "  (" << iv.lo << ", " << iv.hi << ")  min singular value on line "
           << iv.min_line_singval << "\n";
    return os.str();
}

WeightReport admissible_weights(const FuchsOperator& a, std::pair<double, double> gamma_range,
                                int n_base) {
    WeightReport rep;
    const double off = 0.5 * (n_base + 1);
    rep.strip_lo = off - gamma_range.second;
    rep.strip_hi = off - gamma_range.first;
    const OperatorPencil pencil = conormal_symbol(a);
    rep.points = pencil_spectrum(pencil, rep.strip_lo, rep.strip_hi);

    for (const auto& p : rep.points) rep.forbidden_gammas.push_back(off - p.w.real());
    std::sort(rep.forbidden_gammas.begin(), rep.forbidden_gammas.end());
    rep.forbidden_gammas.erase(std::unique(rep.forbidden_gammas.begin(), rep.forbidden_gammas.end(),
                                           [](double x, double y) { return std::abs(x - y) < 1e-8; }),
                               rep.forbidden_gammas.end());

    const double margin = 1e-6;
    std::vector<std::pair<double, double>> intervals;
    double lo = gamma_range.first;
    for (double g : rep.forbidden_gammas) {
        if (g - margin > lo) intervals.emplace_back(lo, g - margin);
        lo = std::max(lo, g + margin);
    }
    if (gamma_range.second > lo) intervals.emplace_back(lo, gamma_range.second);

    for (const auto& [l, h] : intervals) {
        WeightInterval iv;
        iv.lo = l;
        iv.hi = h;
        const double gamma = 0.5 * (l + h);
        double minsv = 1e300;
        for (int i = 0; i <= 32; ++i) {
            const double tau = -16.0 + i;  // sampled line
            const cd w(off - gamma, tau);
            minsv = std::min(minsv, min_singular_value(pencil.eval(w)));
        }
        iv.min_line_singval = minsv;
        if (minsv > 0.0) rep.admissible.push_back(iv);
    }
    return rep;
}

GridFunction weight_shift(double beta, const GridFunction& u) {
    GridFunction out = u;
    for (int j = 0; j < u.grid.n; ++j) out.vals.row(j) *= std::pow(u.grid.r(j), beta);
    return out;
}

}  // namespace mellinlab
