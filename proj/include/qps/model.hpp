// model.hpp — scalar and per-level quantities of the adiabatic approximation
//
// The qubit-oscillator Hamiltonian
//     H = -(Delta/2) sigma_x - (epsilon/2) sigma_z + omega a'a
//         + lambda sigma_z (a' + a)
// is treated in the displaced-oscillator basis. Everything downstream is
// driven by the per-level spectral data computed here: the renormalized
// splitting, the level gaps chi_n, and the time-dependent coefficients
// C_n(t) that carry the slow qubit dynamics of each Fock level.

#pragma once

#include <complex>
#include <vector>

#include "qps/errors.hpp"

namespace qps {

using Complex = std::complex<double>;

enum class Parity { plus, minus };

// Physical inputs. All energies are in units of omega; the CLI fixes
// omega = 1, but the formulas keep omega explicit so that tables are
// invariant under rescaling when inputs are expressed as ratios.
struct ModelParams {
    double delta = 0.15;      // qubit splitting Delta >= 0
    double epsilon = 0.03;    // static bias
    double omega = 1.0;       // oscillator frequency > 0
    double lambda = 0.3;      // coupling >= 0
    Complex alpha{3.0, 0.0};  // initial coherent amplitude
    Parity parity = Parity::plus;

    bool operator==(const ModelParams&) const = default;

    void validate() const;    // throws std::invalid_argument
};

// Derived scalars shared by every module.
struct DerivedParams {
    double x = 0.0;           // (2 lambda / omega)^2
    double delta_tilde = 0.0; // Delta * exp(-x/2)
    double eps_tilde = 0.0;   // epsilon / 2
    Complex alpha_plus{};     // alpha + lambda/omega
    double shift = 0.0;       // lambda / omega
};

DerivedParams derive_params(const ModelParams& p);

// Laguerre polynomial L_n(x) by the forward three-term recurrence.
double laguerre(int n, double x);

// Per-level spectral data for n = 0..n_max.
//
// delta_n = -(delta_tilde/2) L_n(x),  chi_n = sqrt(delta_n^2 + eps_tilde^2),
// a_plus/a_minus = (chi_n + eps_tilde +- (-1)^n delta_n) / (2 chi_n),
// b_plus/b_minus = (chi_n - eps_tilde +- (-1)^n delta_n) / (2 chi_n).
//
// Identity: a_minus[n] + b_plus[n] = a_plus[n] + b_minus[n] = 1, which is
// what makes the level coefficients equal 1 at t = 0.
struct SpectralTable {
    int n_max = 0;
    double eps_tilde = 0.0;
    std::vector<double> delta_n;
    std::vector<double> chi_n;
    std::vector<double> a_plus, a_minus, b_plus, b_minus;
};

// Throws DegenerateLevel when chi_n = 0 through an accidental zero of
// L_n(x) at eps_tilde = 0. The qubit-free limit (delta_tilde = 0 and
// eps_tilde = 0) is well defined: all coefficients reduce to 1/2 so that
// C_n(t) = 1 identically.
SpectralTable build_spectral_table(const DerivedParams& d, int n_max);

// C_n(t) for the requested branch:
//   plus:  a_minus[n] e^{+i chi_n t} + b_plus[n]  e^{-i chi_n t}
//   minus: a_plus[n]  e^{+i chi_n t} + b_minus[n] e^{-i chi_n t}
// Throws IndexOutOfRange for n outside [0, n_max].
Complex level_coefficient(const SpectralTable& t, int n, Parity branch,
                          double time);

// Upper tail of Poisson(mean) beyond n (i.e. sum over k > n), by direct
// summation of scaled terms. Used by the truncation heuristic and by
// tail-bound tests.
double poisson_tail(double mean, int n);

// Smallest N with Poisson(|alpha_plus|^2) tail below tail_tol, but never
// below ceil(|a|^2 + 10 |a| + 20); the floor protects the oscillatory
// phase-space sums, which need headroom well past the occupation tail.
int choose_truncation(const DerivedParams& d, double tail_tol);

} // namespace qps
