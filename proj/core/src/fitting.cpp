#include "mellinlab/fitting.hpp"

namespace mellinlab {

namespace {

PowerFit fit_loglog(const std::vector<double>& lx, const std::vector<double>& ly) {
    PowerFit out;
    const int n = static_cast<int>(lx.size());
    out.used = n;
    if (n == 0) return out;
    if (n == 1) {
        out.c = std::exp(ly[0]);
        return out;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double det = n * sxx - sx * sx;
    if (std::abs(det) < 1e-14) {
        out.c = std::exp(sy / n);
        return out;
    }
    out.exponent = (n * sxy - sx * sy) / det;
    out.c = std::exp((sy - out.exponent * sx) / n);
    double ss = 0;
    for (int i = 0; i < n; ++i) {
        const double pred = std::log(out.c) + out.exponent * lx[i];
        ss += (ly[i] - pred) * (ly[i] - pred);
    }
    // residual measured relative on the log scale; exp(rms)-1 approximates the
    // multiplicative misfit
    out.rel_residual = std::exp(std::sqrt(ss / n)) - 1.0;
    return out;
}

}  // namespace

PowerFit fit_power_law(std::span<const double> x, std::span<const double> y, double floor) {
    std::vector<double> lx, ly;
    for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] > 0.0 && y[i] > floor && std::isfinite(y[i])) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    return fit_loglog(lx, ly);
}

PowerFit fit_scaling_law(std::span<const double> m, std::span<const double> y) {
    std::vector<double> lx, ly;
    for (size_t i = 0; i < m.size() && i < y.size(); ++i) {
        if (m[i] > 0.0 && y[i] > 0.0 && std::isfinite(y[i])) {
            lx.push_back(std::log(std::max(m[i], 1.0 / m[i])));
            ly.push_back(std::log(y[i]));
        }
    }
    return fit_loglog(lx, ly);
}

}  // namespace mellinlab
