// Discrete asymptotic types, the flat spaces H_Theta, planting and extraction
// of singular coefficients, and the mapping of types under Mellin operators.
//
// Extraction: the coefficients are first fit in the pure-asymptotics region of
// the log grid (the basis r^{-p_j} log^k r is a linear model once P is given),
// then recovered as contour integrals of the reconstructed meromorphic
// continuation of (Mu)(w) around each p_j.  Grid-truncated Mellin transforms
// are entire, so the continuation is carried by the fitted singular model plus
// the computable entire corrections.
#pragma once

#include "mellinlab/mellin.hpp"
#include "mellinlab/merosym.hpp"
#include "mellinlab/report.hpp"

namespace mellinlab {

struct AsymptoticType {
    struct Point {
        cd p;
        int m = 0;  // powers log^k r for 0 <= k <= m
    };
    std::vector<Point> points;
    double gamma = 0.0;
    double theta = -4.0;  // weight interval (theta, 0]
    int d = 0;            // base-dimension offset datum

    double window_top() const { return 0.5 * (d + 1) - gamma; }
    double window_bottom() const { return window_top() + theta; }
    bool in_window(cd p) const {
        return p.real() > window_bottom() && p.real() < window_top();
    }
    void validate() const;  // every Re p_j inside the open window
};

// Adds (p - j, m) for integer j >= 1 while Re(p - j) stays inside the window;
// idempotent.
AsymptoticType shadow_closure(const AsymptoticType& P);

struct SingularExpansion {
    AsymptoticType type;
    // coeffs[j][k]: scale element multiplying r^{-p_j} log^k r, 0 <= k <= m_j
    std::vector<std::vector<Vec>> coeffs;
};

// Default extraction grid: tall toward r -> 0 so the pure-asymptotics region is
// wide.
LogGrid asympt_grid();

// omega(r) sum_j sum_k c_jk r^{-p_j} log^k r on the grid.
GridFunction plant_asymptotics(const SingularExpansion& se, const LogGrid& grid,
                               const ScaleSpec& scale);

// Coefficient recovery against the pole data of P (see the header note).
SingularExpansion extract_coefficients(const GridFunction& u, const AsymptoticType& P);

// max over the depth grid m of || omega u ||_{H^{s, gamma - theta - 1/(m+1)}}
// plus the outer H^{s,gamma} norm; finite values certify flatness at the
// tested depth.
double flat_norm(const GridFunction& u, double gamma, double theta, double s,
                 const OrderReducingFamily& fam);

// Predicted type and leading coefficients of op_M^gamma(f) applied to the
// planted expansion: pole set of f(w) * (singular Mellin data) inside the
// window, multiplicities from Laurent products (collisions escalate).
struct PushPrediction {
    AsymptoticType type;
    std::vector<std::vector<Vec>> coeffs;
};
PushPrediction push_type(const MeroSymbol& f, const SingularExpansion& se, double gamma);

// Plant, apply op_M^gamma(f), extract, compare against push_type; the residual
// (prediction subtracted) must pass flat_norm at depth 1.
Report verify_push(const MeroSymbol& f, const SingularExpansion& se, double gamma, double s,
                   const OrderReducingFamily& fam);

}  // namespace mellinlab
