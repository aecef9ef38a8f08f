// phasespace.hpp — quasi-probability fields on a uniform grid in beta
//
// Wigner values come from the closed double sum over the branched density
// coefficients: each (n, m) pair contributes its branch block entry times
// the displaced-parity kernel element, which equals a displacement matrix
// element at twice the shifted coordinate. The raw hypergeometric form of
// that kernel has removable 1/|beta|^2 singularities at the two displaced
// centers; the associated-Laguerre evaluation used here is finite there.
// An independent series route (alternating sum over displaced-number
// diagonal elements) cross-validates the closed form end to end.

#pragma once

#include <optional>
#include <vector>

#include "qps/density.hpp"

namespace qps {

struct PhaseGrid {
    double half_width = 5.0;  // grid spans [-L, L] in Re and Im
    double spacing = 0.05;
    int nx = 0, ny = 0;

    // Axis coordinate; exactly representable as L - i*h.
    double coord(int i) const {
        return half_width - (nx - 1 - i) * spacing;
    }
    Complex point(int ix, int iy) const {
        return Complex{coord(ix), coord(iy)};
    }
    std::size_t size() const {
        return static_cast<std::size_t>(nx) * ny;
    }
};

PhaseGrid make_grid(double half_width, double spacing);

// Default half-width |alpha| + lambda/omega + 5: covers both displaced
// peaks with a five-unit Gaussian margin.
double default_half_width(const ModelParams& p);

enum class FieldKind { wigner, husimi };

struct Field {
    PhaseGrid grid;
    FieldKind kind = FieldKind::wigner;
    double time = 0.0;
    std::vector<double> values;  // row-major, values[iy*nx + ix]

    double at(int ix, int iy) const {
        return values[static_cast<std::size_t>(iy) * grid.nx + ix];
    }
    double& at(int ix, int iy) {
        return values[static_cast<std::size_t>(iy) * grid.nx + ix];
    }
};

struct WignerStats {
    // Largest |imaginary part| of the complex double sum across the grid,
    // before the real part is taken. Hermiticity of the blocks makes the
    // exact sum real; this measures implementation error.
    double max_imag_residue = 0.0;
};

// Closed-form Wigner field (both branches, evaluated at beta +- shift).
Field wigner_field(const BranchedDensity& b, const PhaseGrid& g,
                   WignerStats* stats = nullptr);

// Independent route: (2/pi) sum_k (-1)^k of squared displaced-basis
// amplitudes, truncated at k_max.
Field wigner_field_series(const BranchedDensity& b, const PhaseGrid& g,
                          int k_max);

// Truncation-adequate k_max for the series route on this grid.
int series_k_max(const BranchedDensity& b, const PhaseGrid& g);

// Husimi field from the two branch Fourier sums; nonnegative by
// construction.
Field husimi_field(const BranchedDensity& b, const PhaseGrid& g);

// Weak-coupling closed form of the Husimi field (Laguerre factors
// linearized; intended for lambda/omega <~ 0.1, no hard gate).
Field husimi_weak_closed(const ModelParams& p, const PhaseGrid& g,
                         double time);

// Gaussian smoothing W -> Q with the normalized kernel (2/pi) e^{-2|.|^2},
// direct summation with support radius 4 units, zero padding outside the
// grid. Throws KindMismatch unless w is a Wigner field.
Field smooth_w_to_q(const Field& w);

// ---- symbolic P-function coefficient export ----

enum class PBranch { plus_shift, minus_shift };

struct PRecord {
    int n = 0, m = 0;
    PBranch branch = PBranch::plus_shift;
    Complex coefficient{};
};

struct PCoefficients {
    double shift = 0.0;  // delta centers sit at -shift (plus) and +shift
    double time = 0.0;
    std::vector<PRecord> records;
};

// Weights of the derivative-of-delta terms of the P distribution. The
// record (n, m, branch, c) stands for c * e^{|z|^2} d^n/dz^n d^m/dz*^m
// delta^2(z) in the branch-shifted variable z; acting on a test function f
// it contributes c * (-1)^{n+m} [d^n dz^n d^m dz*^m (e^{|z|^2} f)](0).
PCoefficients p_coefficients(const ModelParams& p, double time, int n_max);

} // namespace qps
