#include "mellinlab/linalg.hpp"

#include <Eigen/SVD>

namespace mellinlab {

double op_norm(const Vec& diag) {
    double m = 0.0;
    for (Eigen::Index i = 0; i < diag.size(); ++i) m = std::max(m, std::abs(diag[i]));
    return m;
}

double op_norm(const Mat& a) {
    if (a.size() == 0) return 0.0;
    if (a.rows() <= 48 && a.cols() <= 48) {
        return a.jacobiSvd().singularValues()(0);
    }
    // power iteration on A^H A; deterministic start
    Vec v = Vec::Ones(a.cols());
    v.normalize();
    double lam = 0.0, prev = -1.0;
    for (int it = 0; it < 500; ++it) {
        Vec w = a.adjoint() * (a * v);
        const double nw = w.norm();
        if (nw == 0.0) return 0.0;
        v = w / nw;
        lam = nw;
        if (prev > 0.0 && std::abs(lam - prev) <= 1e-10 * lam) break;
        prev = lam;
    }
    return std::sqrt(lam);
}

double min_singular_value(const Mat& a) {
    Eigen::JacobiSVD<Mat> svd(a);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

int numerical_nullity(const Mat& a, double thresh_rel) {
    Eigen::BDCSVD<Mat> svd(a);
    const auto& s = svd.singularValues();
    if (s.size() == 0) return 0;
    const double cut = thresh_rel * s(0);
    int count = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) < cut) ++count;
    return count;
}

}  // namespace mellinlab
