// Fuchs-type operators r^{-mu} sum_j a_j(r) (-r d/dr)^j on the model cone,
// their conormal symbols as operator pencils, the non-invertibility set D, and
// admissible weight intervals.
#pragma once

#include "mellinlab/mellin.hpp"
#include "mellinlab/report.hpp"
#include "mellinlab/scales.hpp"

namespace mellinlab {

struct RProfile {
    std::string name = "const";
    std::function<double(double)> f;  // smooth up to r = 0
    double operator()(double r) const { return f ? f(r) : 1.0; }
    double at_zero() const { return f ? f(0.0) : 1.0; }
};

RProfile make_r_profile(const std::string& name);  // "const", "exp" (e^{-r}), "rational" (1/(1+r))

struct FuchsOperator {
    int order = 0;  // mu
    ScaleSpec scale;
    struct Coeff {
        int j = 0;      // power of (-r d/dr)
        Mat matrix;     // mode matrix
        RProfile profile;
    };
    std::vector<Coeff> coeffs;
};

// r^{-mu} sum_j a_j(r) (-r d/dr)^j u, the derivative realized spectrally in y.
GridFunction apply_fuchs(const FuchsOperator& a, const GridFunction& u);

struct OperatorPencil {
    std::vector<Mat> coeff;  // coeff[j] multiplies w^j
    int degree() const { return static_cast<int>(coeff.size()) - 1; }
    int dim() const { return coeff.empty() ? 0 : static_cast<int>(coeff[0].rows()); }
    Mat eval(cd w) const;
    bool diagonal() const;
};

OperatorPencil conormal_symbol(const FuchsOperator& a);

struct SpectrumPoint {
    cd w;
    int multiplicity = 1;
};

// Eigenvalues of the companion linearization inside the strip re_min <= Re w <=
// re_max, |Im w| <= im_max, deduplicated at 1e-8; per-mode scalar factorization
// when every coefficient is diagonal.  The leading coefficient must be invertible.
std::vector<SpectrumPoint> pencil_spectrum(const OperatorPencil& p, double re_min, double re_max,
                                           double im_max = 64.0);

struct WeightInterval {
    double lo = 0.0, hi = 0.0;
    double min_line_singval = 0.0;  // min over the sampled line of sigma_min(sigma_c)
};

struct WeightReport {
    double strip_lo = 0.0, strip_hi = 0.0;
    std::vector<SpectrumPoint> points;          // the set D in the induced strip
    std::vector<double> forbidden_gammas;       // gamma = (n+1)/2 - Re p
    std::vector<WeightInterval> admissible;     // maximal subintervals with margin
    std::string text() const;
};

// Admissible gamma-subintervals of gamma_range: Gamma_{(n+1)/2-gamma} avoids D
// with margin 1e-6, and the smallest singular value of sigma_c on the sampled
// line stays positive.
WeightReport admissible_weights(const FuchsOperator& a, std::pair<double, double> gamma_range,
                                int n_base);

// Multiplication by r^beta; shifts the weight: r^beta H^{s,gamma} = H^{s,gamma+beta}.
GridFunction weight_shift(double beta, const GridFunction& u);

}  // namespace mellinlab
