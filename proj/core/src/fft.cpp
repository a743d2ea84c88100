#include "mellinlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace mellinlab::fft {

namespace {

// One cached in/out buffer + plan pair per (size, sign). FFTW's planner is not
// thread-safe, so all access goes through a mutex; execution copies in/out.
struct PlanSlot {
    fftw_complex* buf = nullptr;
    fftw_plan plan = nullptr;
};

std::mutex g_mutex;
std::map<std::pair<int, int>, PlanSlot> g_plans;

PlanSlot& get_plan(int n, int sign) {
    auto key = std::make_pair(n, sign);
    auto it = g_plans.find(key);
    if (it != g_plans.end()) return it->second;
    PlanSlot slot;
    slot.buf = fftw_alloc_complex(static_cast<size_t>(n));
    slot.plan = fftw_plan_dft_1d(n, slot.buf, slot.buf,
                                 sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    return g_plans.emplace(key, slot).first->second;
}

}  // namespace

void dft(std::vector<cd>& x, int sign) {
    const int n = static_cast<int>(x.size());
    if (n == 0) return;
    std::lock_guard<std::mutex> lock(g_mutex);
    PlanSlot& slot = get_plan(n, sign);
    for (int j = 0; j < n; ++j) {
        slot.buf[j][0] = x[j].real();
        slot.buf[j][1] = x[j].imag();
    }
    fftw_execute(slot.plan);
    for (int j = 0; j < n; ++j) x[j] = cd(slot.buf[j][0], slot.buf[j][1]);
}

LineGrid freq_grid(const LineGrid& g) {
    LineGrid f;
    f.n = g.n;
    f.dx = 2.0 * pi / (g.n * g.dx);
    f.x0 = -pi / g.dx;
    return f;
}

// F(xi_k) = dx e^{-i x0 xi_k} DFT_k[(-1)^j f_j], xi_k = 2pi(k-n/2)/(n dx).
std::vector<cd> forward_line(const LineGrid& g, const std::vector<cd>& f) {
    if (static_cast<int>(f.size()) != g.n) throw std::invalid_argument("forward_line: size mismatch");
    std::vector<cd> w(f);
    for (int j = 1; j < g.n; j += 2) w[j] = -w[j];
    dft(w, -1);
    const LineGrid fg = freq_grid(g);
    for (int k = 0; k < g.n; ++k) {
        const double xi = fg.x(k);
        w[k] *= g.dx * std::polar(1.0, -g.x0 * xi);
    }
    return w;
}

// f_j = (1/(n dx)) (-1)^j IDFT_j[e^{+i x0 xi_k} F_k]; exact inverse of forward_line.
std::vector<cd> inverse_line(const LineGrid& g, const std::vector<cd>& F) {
    if (static_cast<int>(F.size()) != g.n) throw std::invalid_argument("inverse_line: size mismatch");
    const LineGrid fg = freq_grid(g);
    std::vector<cd> w(F);
    for (int k = 0; k < g.n; ++k) {
        const double xi = fg.x(k);
        w[k] *= std::polar(1.0, g.x0 * xi);
    }
    dft(w, +1);
    const double scale = 1.0 / (g.n * g.dx);
    for (int j = 0; j < g.n; ++j) {
        w[j] *= scale;
        if (j & 1) w[j] = -w[j];
    }
    return w;
}

std::vector<cd> spectral_derivative(const LineGrid& g, const std::vector<cd>& f, int order) {
    std::vector<cd> F = forward_line(g, f);
    const LineGrid fg = freq_grid(g);
    for (int k = 0; k < g.n; ++k) {
        const cd i_xi(0.0, fg.x(k));
        cd m = 1.0;
        for (int p = 0; p < order; ++p) m *= i_xi;
        F[k] *= m;
    }
    return inverse_line(g, F);
}

}  // namespace mellinlab::fft
