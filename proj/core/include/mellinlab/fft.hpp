// FFT plumbing: raw complex DFTs (FFTW-backed, plan cache) and continuum-normalized
// line transforms on centered uniform grids,
//
//   (F f)(xi)     = int e^{-i x xi} f(x) dx,
//   (F^{-1} g)(x) = (1/2pi) int e^{+i x xi} g(xi) dxi,
//
// sampled so that forward_line / inverse_line are exact mutual inverses as linear maps.
#pragma once

#include "mellinlab/types.hpp"

namespace mellinlab::fft {

// Unnormalized DFT: sign=-1 maps x_j -> sum_k x_k e^{-2pi i jk/n}; sign=+1 conjugate kernel.
void dft(std::vector<cd>& x, int sign);

// Uniform grid x_j = x0 + j*dx, j = 0..n-1. n must be a power of two for the transforms.
struct LineGrid {
    double x0 = 0.0;
    double dx = 1.0;
    int n = 0;
    double x(int j) const { return x0 + j * dx; }
    double length() const { return n * dx; }
};

// Dual grid: xi_k = 2pi (k - n/2) / (n dx); same point count.
LineGrid freq_grid(const LineGrid& g);

std::vector<cd> forward_line(const LineGrid& g, const std::vector<cd>& f);
std::vector<cd> inverse_line(const LineGrid& g, const std::vector<cd>& F);

// Spectral derivative d/dx on the periodic extension of the grid.
std::vector<cd> spectral_derivative(const LineGrid& g, const std::vector<cd>& f, int order = 1);

}  // namespace mellinlab::fft
