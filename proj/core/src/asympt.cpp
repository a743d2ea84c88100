#include "mellinlab/asympt.hpp"

#include "mellinlab/linalg.hpp"

#include <Eigen/QR>

namespace mellinlab {

void AsymptoticType::validate() const {
    for (const auto& pt : points) {
        if (!in_window(pt.p))
            throw std::invalid_argument("AsymptoticType: pole outside the weight window");
        if (pt.m < 0) throw std::invalid_argument("AsymptoticType: negative multiplicity");
    }
    if (theta > 0.0) throw std::invalid_argument("AsymptoticType: theta must be <= 0");
}

AsymptoticType shadow_closure(const AsymptoticType& P) {
    AsymptoticType out = P;
    for (const auto& pt : P.points) {
        for (int j = 1;; ++j) {
            const cd q = pt.p - double(j);
            if (q.real() <= P.window_bottom()) break;
            if (q.real() >= P.window_top()) continue;
            bool present = false;
            for (const auto& existing : out.points)
                if (std::abs(existing.p - q) < 1e-12) present = true;
            if (!present) out.points.push_back({q, pt.m});
        }
    }
    std::sort(out.points.begin(), out.points.end(), [](const auto& a, const auto& b) {
        if (a.p.real() != b.p.real()) return a.p.real() > b.p.real();
        return a.p.imag() < b.p.imag();
    });
    return out;
}

LogGrid asympt_grid() {
    LogGrid g;
    g.y_min = -2.0;
    g.y_max = 38.0;
    g.n = 4096;
    g.window_frac = 0.08;
    return g;
}

GridFunction plant_asymptotics(const SingularExpansion& se, const LogGrid& grid,
                               const ScaleSpec& scale) {
    se.type.validate();
    if (se.coeffs.size() != se.type.points.size())
        throw std::invalid_argument("plant_asymptotics: coefficient shape mismatch");
    GridFunction u(grid, scale);
    for (size_t j = 0; j < se.type.points.size(); ++j) {
        const auto& pt = se.type.points[j];
        if (static_cast<int>(se.coeffs[j].size()) != pt.m + 1)
            throw std::invalid_argument("plant_asymptotics: coefficient shape mismatch");
        for (int row = 0; row < grid.n; ++row) {
            const double y = grid.y(row);
            const double om = omega_cutoff(grid.r(row));
            if (om == 0.0) continue;
            // r^{-p} log^k r = e^{p y} (-y)^k
            const cd base = std::exp(pt.p * y);
            cd logpow = 1.0;
            for (int k = 0; k <= pt.m; ++k) {
                if (se.coeffs[j][k].size() != scale.dim())
                    throw std::invalid_argument("plant_asymptotics: element dimension mismatch");
                u.vals.row(row) += om * base * logpow * se.coeffs[j][k].transpose();
                logpow *= -y;
            }
        }
    }
    return u;
}

namespace {

// int_a^b r^{s-1} log^k r dr = J_k(log b) - J_k(log a),
// J_k(t) = e^{s t} sum_i (-1)^{k-i} (k!/i!) t^i / s^{k-i+1}
cd power_log_integral(cd s, double a, double b, int k) {
    auto J = [&](double t) {
        cd acc = 0.0;
        double kfact_over_ifact = 1.0;
        for (int i = k; i >= 0; --i) {
            // kfact_over_ifact = k!/i!
            cd term = std::pow(t, i) / std::pow(s, double(k - i + 1));
            if ((k - i) % 2 == 1) term = -term;
            acc += kfact_over_ifact * term;
            kfact_over_ifact *= i;  // moving i -> i-1 multiplies by i
        }
        return std::exp(s * t) * acc;
    };
    return J(std::log(b)) - J(std::log(a));
}

// entire correction E_{p,k}(z) = M[(omega - 1_{(0,1]}) r^{-p} log^k](z)
cd entire_correction(cd z, cd p, int k) {
    const cd s = z - p;
    // smooth piece on [1/2, 2/3] by composite Simpson
    const int n = 512;
    const double a = 0.5, b = 2.0 / 3.0, h = (b - a) / n;
    cd acc = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double r = a + i * h;
        const double wgt = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        const double lg = std::log(r);
        cd lp = 1.0;
        for (int t = 0; t < k; ++t) lp *= lg;
        acc += wgt * (omega_cutoff(r) - 1.0) * std::pow(r, s - 1.0) * lp;
    }
    acc *= h / 3.0;
    // exact piece -int_{2/3}^1 r^{s-1} log^k r dr
    return acc - power_log_integral(s, 2.0 / 3.0, 1.0, k);
}

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// merge poles closer than the resolution; multiplicities escalate (log genesis)
AsymptoticType merge_close(const AsymptoticType& P) {
    AsymptoticType out = P;
    out.points.clear();
    for (const auto& pt : P.points) {
        bool merged = false;
        for (auto& q : out.points)
            if (std::abs(q.p - pt.p) < 1e-4) {
                q.m += pt.m + 1;
                merged = true;
                break;
            }
        if (!merged) out.points.push_back(pt);
    }
    return out;
}

}  // namespace

SingularExpansion extract_coefficients(const GridFunction& u, const AsymptoticType& P_in) {
    const AsymptoticType P = merge_close(P_in);
    P.validate();
    const int dim = u.scale.dim();
    const LogGrid& g = u.grid;

    // column layout
    struct Col {
        size_t j;
        int k;
    };
    std::vector<Col> cols;
    for (size_t j = 0; j < P.points.size(); ++j)
        for (int k = 0; k <= P.points[j].m; ++k) cols.push_back({j, k});
    if (cols.empty()) return {P, {}};

    // fit rows: pure-asymptotics region (omega == 1, inside the taper plateau)
    std::vector<int> rows;
    for (int row = 0; row < g.n; ++row) {
        const double y = g.y(row);
        if (y < 0.75) continue;
        if (!g.in_plateau(row)) continue;
        rows.push_back(row);
    }
    if (rows.size() < 4 * cols.size())
        throw std::runtime_error("extract_coefficients: grid too short for the type");

    // graded row weights: each y-region contributes O(1)
    auto envelope = [&](double y) {
        double env = 0.0;
        for (const auto& c : cols)
            env += std::exp(P.points[c.j].p.real() * y) * std::pow(std::max(1.0, y), c.k);
        return env;
    };

    Mat A(rows.size(), cols.size());
    Mat rhs(rows.size(), dim);
    for (size_t ri = 0; ri < rows.size(); ++ri) {
        const double y = g.y(rows[ri]);
        const double w = 1.0 / envelope(y);
        for (size_t ci = 0; ci < cols.size(); ++ci) {
            const auto& pt = P.points[cols[ci].j];
            cd v = std::exp(pt.p * y);
            for (int t = 0; t < cols[ci].k; ++t) v *= -y;
            A(ri, ci) = w * v;
        }
        rhs.row(ri) = w * u.vals.row(rows[ri]);
    }
    // column normalization for a well-scaled solve
    RVec colnorm(cols.size());
    for (size_t ci = 0; ci < cols.size(); ++ci) {
        colnorm[ci] = A.col(ci).norm();
        if (colnorm[ci] == 0.0) colnorm[ci] = 1.0;
        A.col(ci) /= colnorm[ci];
    }
    Mat sol = A.colPivHouseholderQr().solve(rhs);
    for (size_t ci = 0; ci < cols.size(); ++ci) sol.row(ci) /= colnorm[ci];

    // model coefficients c_jk
    std::vector<std::vector<Vec>> chat(P.points.size());
    for (size_t j = 0; j < P.points.size(); ++j)
        chat[j].assign(P.points[j].m + 1, Vec::Zero(dim));
    for (size_t ci = 0; ci < cols.size(); ++ci)
        chat[cols[ci].j][cols[ci].k] = sol.row(ci).transpose();

    // contour stage: coefficients from contour integrals of the reconstructed
    // continuation CM(z) = sum c_jk [R_jk(z) + E_jk(z)]
    std::vector<cd> locs;
    for (const auto& pt : P.points) locs.push_back(pt.p);
    auto CM = [&](cd z) {
        Vec acc = Vec::Zero(dim);
        for (size_t j = 0; j < P.points.size(); ++j) {
            const cd p = P.points[j].p;
            for (int k = 0; k <= P.points[j].m; ++k) {
                const double sign = (k % 2 == 0) ? 1.0 : -1.0;
                const cd rational = sign * factorial(k) / std::pow(z - p, double(k + 1));
                acc += (rational + entire_correction(z, p, k)) * chat[j][k];
            }
        }
        return acc;
    };

    SingularExpansion out;
    out.type = P;
    out.coeffs.assign(P.points.size(), {});
    for (size_t j = 0; j < P.points.size(); ++j) {
        const cd p = P.points[j].p;
        double gap = 1e300;
        for (const cd& q : locs)
            if (std::abs(q - p) > 1e-12) gap = std::min(gap, std::abs(q - p));
        const double radius =
            std::min({0.3, 0.4 * gap, 0.45 * (p.real() - P.window_bottom())});
        if (radius < 5e-5)
            throw std::runtime_error("extract_coefficients: pole collision below resolution");
        out.coeffs[j].assign(P.points[j].m + 1, Vec::Zero(dim));
        const int nodes = 256;
        for (int i = 0; i < nodes; ++i) {
            const double th = 2.0 * pi * i / nodes;
            const cd z = p + std::polar(radius, th);
            const cd dz = cd(0.0, 1.0) * (z - p) * (2.0 * pi / nodes);
            const Vec val = CM(z);
            cd pw = 1.0;
            for (int k = 0; k <= P.points[j].m; ++k) {
                const double sign = (k % 2 == 0) ? 1.0 : -1.0;
                out.coeffs[j][k] += (sign / factorial(k)) * (pw * dz / cd(0.0, 2.0 * pi)) * val;
                pw *= (z - p);
            }
        }
    }
    return out;
}

double flat_norm(const GridFunction& u, double gamma, double theta, double s,
                 const OrderReducingFamily& fam) {
    if (!std::isfinite(theta)) throw std::invalid_argument("flat_norm: theta must be finite");
    GridFunction inner = u, outer = u;
    for (int row = 0; row < u.grid.n; ++row) {
        const double om = omega_cutoff(u.grid.r(row));
        inner.vals.row(row) *= om;
        outer.vals.row(row) *= (1.0 - om);
    }
    double worst = 0.0;
    for (int m = 0; m <= 3; ++m) {
        const double depth_gamma = gamma - theta - 1.0 / (m + 1);
        worst = std::max(worst, hs_gamma_norm(s, depth_gamma, inner, fam));
    }
    return worst + hs_gamma_norm(s, gamma, outer, fam);
}

namespace {

// Taylor coefficients of an analytic matrix function at p, t = 0..tmax
std::vector<Mat> taylor_coefficients(const std::function<Mat(cd)>& f, cd p, double radius,
                                     int tmax, int nodes = 256) {
    Mat probe = f(p + radius);
    std::vector<Mat> out(tmax + 1, Mat::Zero(probe.rows(), probe.cols()));
    for (int i = 0; i < nodes; ++i) {
        const double th = 2.0 * pi * i / nodes;
        const cd z = p + std::polar(radius, th);
        const cd dz = cd(0.0, 1.0) * (z - p) * (2.0 * pi / nodes);
        const Mat v = f(z);
        for (int t = 0; t <= tmax; ++t) {
            const cd pw = std::pow(z - p, double(-(t + 1)));
            out[t] += (pw * dz / cd(0.0, 2.0 * pi)) * v;
        }
    }
    return out;
}

}  // namespace

PushPrediction push_type(const MeroSymbol& f, const SingularExpansion& se, double gamma) {
    (void)gamma;
    se.type.validate();
    int dim = 1;
    if (!se.coeffs.empty() && !se.coeffs[0].empty()) dim = static_cast<int>(se.coeffs[0][0].size());
    PushPrediction pred;
    pred.type = se.type;
    pred.type.points.clear();

    // Laurent data of the planted transform at p_j: L_in[k] = c_jk (-1)^k k!
    auto L_in = [&](size_t j, int k) -> Vec {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        return sign * factorial(k) * se.coeffs[j][k];
    };
    // model continuation used for the regular parts (rationals + entire corrections)
    auto model_reg = [&](cd z, int skip_j) {
        Vec acc = Vec::Zero(dim);
        for (size_t j = 0; j < se.type.points.size(); ++j) {
            const cd p = se.type.points[j].p;
            for (int k = 0; k <= se.type.points[j].m; ++k) {
                const double sign = (k % 2 == 0) ? 1.0 : -1.0;
                cd rational = 0.0;
                if (static_cast<int>(j) != skip_j)
                    rational = sign * factorial(k) / std::pow(z - p, double(k + 1));
                acc += (rational + entire_correction(z, p, k)) * se.coeffs[j][k];
            }
        }
        return acc;
    };

    auto fc = f;
    for (size_t j = 0; j < se.type.points.size(); ++j) {
        const auto& pt = se.type.points[j];
        // does f have a pole here?
        const PoleDatum* coll = nullptr;
        for (const auto& pd : f.poles)
            if (std::abs(pd.p - pt.p) < 1e-6) coll = &pd;

        if (coll == nullptr) {
            // Taylor of f at p_j against the Laurent data of the transform
            auto ftay = taylor_coefficients([&fc](cd z) { return fc.eval(z); }, pt.p, 0.15, pt.m);
            std::vector<Vec> cq(pt.m + 1, Vec::Zero(dim));
            for (int k = 0; k <= pt.m; ++k) {
                Vec lout = Vec::Zero(dim);
                for (int t = 0; t + k <= pt.m; ++t) lout += ftay[t] * L_in(j, k + t);
                const double sign = (k % 2 == 0) ? 1.0 : -1.0;
                cq[k] = (sign / factorial(k)) * lout;
            }
            pred.type.points.push_back(pt);
            pred.coeffs.push_back(std::move(cq));
        } else {
            // collision: multiplicity escalates to m_j + m_f + 1
            const int mf = coll->m;
            const int mq = pt.m + mf + 1;
            // regular part of f at the shared pole
            auto freg = [&fc, coll](cd z) {
                Mat acc = fc.eval(z);
                cd inv = 1.0 / (z - coll->p);
                cd pw = inv;
                for (int k = 0; k <= coll->m; ++k) {
                    acc -= pw * coll->laurent[k];
                    pw *= inv;
                }
                return acc;
            };
            auto ftay = taylor_coefficients(freg, pt.p, 0.15, mq);
            // series of the transform around p: singular L_in + regular Taylor of the rest
            auto ureg = [&](cd z) {
                Mat m(dim, 1);
                m.col(0) = model_reg(z, static_cast<int>(j));
                return m;
            };
            auto utay = taylor_coefficients(ureg, pt.p, 0.1, mq);
            std::vector<Vec> cq(mq + 1, Vec::Zero(dim));
            for (int K = 0; K <= mq; ++K) {
                Vec lout = Vec::Zero(dim);
                // product coefficient at (z-p)^{-(K+1)}: sum over f-index i and u-index l
                // with i + l = -(K+1); i in [-(mf+1), mq], l in [-(m_j+1), mq]
                for (int i = -(mf + 1); i <= mq; ++i) {
                    const int l = -(K + 1) - i;
                    if (l < -(pt.m + 1) || l > mq) continue;
                    // f coefficient at power i
                    Mat fcoef;
                    if (i < 0)
                        fcoef = coll->laurent[-i - 1];
                    else
                        fcoef = ftay[i];
                    Vec ucoef;
                    if (l < 0)
                        ucoef = L_in(j, -l - 1);
                    else
                        ucoef = utay[l].col(0);
                    lout += fcoef * ucoef;
                }
                const double sign = (K % 2 == 0) ? 1.0 : -1.0;
                cq[K] = (sign / factorial(K)) * lout;
            }
            pred.type.points.push_back({pt.p, mq});
            pred.coeffs.push_back(std::move(cq));
        }
    }

    // new poles of f inside the window, away from P
    for (const auto& pd : f.poles) {
        if (!se.type.in_window(pd.p)) continue;
        bool matches = false;
        for (const auto& pt : se.type.points)
            if (std::abs(pd.p - pt.p) < 1e-6) matches = true;
        if (matches) continue;
        auto ureg = [&](cd z) {
            Mat m(dim, 1);
            m.col(0) = model_reg(z, -1);
            return m;
        };
        auto utay = taylor_coefficients(ureg, pd.p, 0.1, pd.m);
        std::vector<Vec> cq(pd.m + 1, Vec::Zero(dim));
        for (int K = 0; K <= pd.m; ++K) {
            Vec lout = Vec::Zero(dim);
            for (int t = 0; K + t <= pd.m; ++t) lout += pd.laurent[K + t] * utay[t].col(0);
            const double sign = (K % 2 == 0) ? 1.0 : -1.0;
            cq[K] = (sign / factorial(K)) * lout;
        }
        pred.type.points.push_back({pd.p, pd.m});
        pred.coeffs.push_back(std::move(cq));
    }
    return pred;
}

Report verify_push(const MeroSymbol& f, const SingularExpansion& se, double gamma, double s,
                   const OrderReducingFamily& fam) {
    Report rep;
    rep.name = "push-type";
    const LogGrid grid = asympt_grid();
    const ScaleSpec scale = fam.scale;
    const GridFunction u = plant_asymptotics(se, grid, scale);

    MellinLineSymbol fsym;
    fsym.order = std::max(f.order, 0.0);
    fsym.dep = MellinLineSymbol::Dep::Constant;
    auto fc = f;
    fsym.eval = [fc](double, double, cd w) { return fc.eval(w); };
    const GridFunction out = op_mellin(gamma, fsym, u);

    const PushPrediction pred = push_type(f, se, gamma);
    const SingularExpansion got = extract_coefficients(out, pred.type);

    double coeff_err = 0.0, coeff_scale = 1.0;
    for (size_t j = 0; j < pred.type.points.size(); ++j)
        for (int k = 0; k <= pred.type.points[j].m; ++k) {
            coeff_err = std::max(coeff_err, (got.coeffs[j][k] - pred.coeffs[j][k]).norm());
            coeff_scale = std::max(coeff_scale, pred.coeffs[j][k].norm());
        }
    rep.set("coeff_err", coeff_err);
    rep.require(coeff_err <= 1e-5 * coeff_scale, "predicted coefficients disagree");

    // residual flatness at depth 1, on the taper plateau
    SingularExpansion pred_se{pred.type, pred.coeffs};
    GridFunction res = out;
    res.vals -= plant_asymptotics(pred_se, grid, scale).vals;
    for (int row = 0; row < grid.n; ++row) {
        res.vals.row(row) *= grid.window(row);
    }
    GridFunction outw = out;
    for (int row = 0; row < grid.n; ++row) outw.vals.row(row) *= grid.window(row);
    const double fn_res = flat_norm(res, gamma, -1.0, s, fam);
    const double fn_out = flat_norm(outw, gamma, -1.0, s, fam);
    rep.set("flat_norm_residual", fn_res);
    rep.set("flat_norm_output", fn_out);
    rep.require(fn_res <= 1e-3 * fn_out + 1e-9, "residual fails depth-1 flatness");
    return rep;
}

}  // namespace mellinlab
