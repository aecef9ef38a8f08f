// dispmat.hpp — displacement-operator matrix elements between Fock states
//
// D_mk(beta) = <m|D(beta)|k>. The primary evaluation path is the
// associated-Laguerre closed form carried along matrix diagonals by a
// bounded recurrence (all |D_mk| <= 1), which stays finite as beta -> 0.
// The terminating-hypergeometric form is kept as an independent
// cross-check route; it contains 1/|beta|^2 and is unusable near zero.

#pragma once

#include <complex>
#include <vector>

#include "qps/model.hpp"

namespace qps {

// Terminating 2F0(-m, -n; ; z): sum of (-m)_r (-n)_r z^r / r! over
// r = 0..min(m,n), in ascending r.
Complex two_f_zero(int m, int n, Complex z);

// Single element <m|D(beta)|k> via the associated-Laguerre route.
Complex displacement_element(int m, int k, Complex beta);

// Same element via the hypergeometric form
//   (-1)^k e^{-|b|^2/2} b^m b*^k / sqrt(m! k!) 2F0(-m,-k;;-1/|b|^2).
// Cross-check path only; throws std::invalid_argument at beta = 0.
Complex displacement_element_series(int m, int k, Complex beta);

struct DisplacementMatrix {
    Complex beta{};
    int rows = 0;
    int cols = 0;
    std::vector<Complex> entries;  // row-major, entries[m*cols + k]

    const Complex& operator()(int m, int k) const {
        return entries[static_cast<std::size_t>(m) * cols + k];
    }
};

// Fills out[m*cols + k] = <m|D(beta)|k> for the whole block.
// out must hold rows*cols entries.
void fill_displacement(Complex beta, int rows, int cols, Complex* out);

DisplacementMatrix displacement_matrix(Complex beta, int rows, int cols);

} // namespace qps
