#include "mellinlab/contour.hpp"

#include <stdexcept>

namespace mellinlab::contour {

namespace {

// accumulated phase variation of f along the segment [a, b], refining until
// each step turns by less than pi/2
double segment_phase(const ScalarFn& f, cd a, cd b, double vanish_tol, int depth = 0) {
    const int n0 = 16;
    double total = 0.0;
    cd prev = f(a);
    if (std::abs(prev) < vanish_tol) throw std::runtime_error("contour: function vanishes on path");
    for (int i = 1; i <= n0; ++i) {
        const cd w = a + (b - a) * (double(i) / n0);
        const cd cur = f(w);
        if (std::abs(cur) < vanish_tol)
            throw std::runtime_error("contour: function vanishes on path");
        const double d = std::arg(cur / prev);
        if (std::abs(d) > 0.5 * pi) {
            if (depth > 24) throw std::runtime_error("contour: phase tracking failed");
            const cd wa = a + (b - a) * (double(i - 1) / n0);
            total += segment_phase(f, wa, w, vanish_tol, depth + 1);
        } else {
            total += d;
        }
        prev = cur;
    }
    return total;
}

}  // namespace

int boundary_winding(const ScalarFn& f, const Rect& rect, double vanish_tol) {
    const cd c1(rect.re_lo, rect.im_lo), c2(rect.re_hi, rect.im_lo), c3(rect.re_hi, rect.im_hi),
        c4(rect.re_lo, rect.im_hi);
    double total = 0.0;
    total += segment_phase(f, c1, c2, vanish_tol);
    total += segment_phase(f, c2, c3, vanish_tol);
    total += segment_phase(f, c3, c4, vanish_tol);
    total += segment_phase(f, c4, c1, vanish_tol);
    const double winding = total / (2.0 * pi);
    const long rounded = std::lround(winding);
    if (std::abs(winding - double(rounded)) > 0.25)
        throw std::runtime_error("contour: non-integer boundary winding");
    return static_cast<int>(rounded);
}

WindingResult line_winding(const ScalarFn& f, double beta, double im_lo, double im_hi,
                           int initial_samples) {
    WindingResult out;
    out.min_abs = 1e300;
    double total = 0.0;
    cd prev = f(cd(beta, im_lo));
    out.min_abs = std::min(out.min_abs, std::abs(prev));
    double t_prev = im_lo;
    const double dt = (im_hi - im_lo) / initial_samples;
    double t = im_lo;
    while (t < im_hi - 1e-12) {
        double step = dt;
        // refine locally until the phase step is small
        for (;;) {
            const cd cur = f(cd(beta, t + step));
            const double d = std::arg(cur / prev);
            if (std::abs(d) <= 0.5 * pi || step < 1e-9 * (im_hi - im_lo)) {
                total += d;
                prev = cur;
                t += step;
                out.min_abs = std::min(out.min_abs, std::abs(cur));
                break;
            }
            step *= 0.5;
        }
        (void)t_prev;
    }
    const double w = total / (2.0 * pi);
    out.winding = static_cast<int>(std::lround(w));
    out.residue = std::abs(w - double(out.winding));
    return out;
}

namespace {

void subdivide(const ScalarFn& f, const Rect& rect, const std::vector<cd>& exclusions,
               double exclusion_radius, double target_diam, std::vector<Rect>& found, int depth) {
    // nudge the rectangle if an exclusion point sits near the boundary
    int wind;
    try {
        wind = boundary_winding(f, rect);
    } catch (const std::runtime_error&) {
        if (depth > 40) throw;
        Rect r2 = rect;
        const double eps_r = 1e-3 * (rect.width() + 1e-6);
        const double eps_i = 1.3e-3 * (rect.height() + 1e-6);
        r2.re_lo -= eps_r;
        r2.re_hi += 2.0 * eps_r;
        r2.im_lo -= eps_i;
        r2.im_hi += 2.0 * eps_i;
        subdivide(f, r2, exclusions, exclusion_radius, target_diam, found, depth + 1);
        return;
    }
    if (wind == 0) return;
    bool excluded = false;
    for (const cd& e : exclusions)
        if (rect.contains(e) || std::abs(e - rect.center()) < rect.diameter()) excluded = true;
    if (rect.diameter() < target_diam || (excluded && rect.diameter() < 4.0 * exclusion_radius)) {
        if (!excluded) found.push_back(rect);
        return;
    }
    Rect a = rect, b = rect;
    if (rect.width() >= rect.height()) {
        const double mid = 0.5 * (rect.re_lo + rect.re_hi);
        a.re_hi = mid;
        b.re_lo = mid;
    } else {
        const double mid = 0.5 * (rect.im_lo + rect.im_hi);
        a.im_hi = mid;
        b.im_lo = mid;
    }
    subdivide(f, a, exclusions, exclusion_radius, target_diam, found, depth + 1);
    subdivide(f, b, exclusions, exclusion_radius, target_diam, found, depth + 1);
}

}  // namespace

std::vector<Zero> find_zeros(const ScalarFn& f, const Rect& rect, const std::vector<cd>& exclusions,
                             double exclusion_radius, double target_diam) {
    std::vector<Rect> boxes;
    subdivide(f, rect, exclusions, exclusion_radius, target_diam, boxes, 0);

    std::vector<Zero> zeros;
    for (const Rect& box : boxes) {
        const int mult = boundary_winding(f, box);
        cd w = box.center();
        // multiplicity-adapted Newton with numerical derivative
        for (int it = 0; it < 60; ++it) {
            const double h = std::max(1e-7, 1e-7 * std::abs(w));
            const cd fw = f(w);
            const cd df = (f(w + h) - f(w - h)) / (2.0 * h);
            if (std::abs(df) == 0.0) break;
            const cd step = double(mult) * fw / df;
            w -= step;
            if (std::abs(step) < 1e-13 * std::max(1.0, std::abs(w))) break;
        }
        bool merged = false;
        for (auto& z : zeros)
            if (std::abs(z.w - w) < 1e-8) {
                z.multiplicity += mult;
                merged = true;
                break;
            }
        if (!merged) zeros.push_back({w, mult});
    }
    std::sort(zeros.begin(), zeros.end(), [](const Zero& a, const Zero& b) {
        if (a.w.real() != b.w.real()) return a.w.real() < b.w.real();
        return a.w.imag() < b.w.imag();
    });
    return zeros;
}

std::vector<Mat> laurent_coefficients(const MatFn& g, cd center, double radius, int kmax,
                                      int nodes) {
    std::vector<Mat> out;
    Mat sample = g(center + radius);
    for (int k = 0; k <= kmax; ++k) out.push_back(Mat::Zero(sample.rows(), sample.cols()));
    for (int j = 0; j < nodes; ++j) {
        const double th = 2.0 * pi * j / nodes;
        const cd z = center + std::polar(radius, th);
        const Mat gv = g(z);
        // dz = i (z - center) dtheta
        const cd dz = cd(0.0, 1.0) * (z - center) * (2.0 * pi / nodes);
        cd pw = 1.0;
        for (int k = 0; k <= kmax; ++k) {
            out[k] += (pw * dz / cd(0.0, 2.0 * pi)) * gv;
            pw *= (z - center);
        }
    }
    return out;
}

}  // namespace mellinlab::contour
