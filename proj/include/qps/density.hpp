// density.hpp — time-evolved reduced oscillator density matrix
//
// The reduced state after tracing out the qubit is a sum of two branches,
// each an outer product in a displaced Fock basis:
//
//   rho(t) = sum_{n,m} plus_block[n,m]  |n+><m+|  +  minus_block[n,m] |n-><m-|
//   |n+-> = D'(+-lambda/omega) |n>
//
// with
//   plus_block[n,m]  = 1/2 e^{-|a+|^2} a+^n a+*^m / sqrt(n! m!)
//                      C_n(t) C_m(t)* e^{-i(n-m) omega t}
//   minus_block[n,m] = same prefactor, (-1)^{n+m} Cbar_n(t)* Cbar_m(t),
//
// where C/Cbar are the level coefficients of the chosen and the opposite
// parity branch. Each block factorizes as amp amp'; the amplitude vectors
// are stored alongside the dense blocks because the phase-space evaluators
// are linear-cost in them.

#pragma once

#include <Eigen/Dense>

#include "qps/model.hpp"

namespace qps {

struct BranchedDensity {
    int n_max = 0;
    double shift = 0.0;  // lambda/omega, displacement of the branch bases
    double time = 0.0;
    Parity parity = Parity::plus;
    Eigen::VectorXcd plus_amp, minus_amp;    // blocks = amp * amp.adjoint()
    Eigen::MatrixXcd plus_block, minus_block;
};

struct FockDensity {
    int dim = 0;
    Eigen::MatrixXcd matrix;  // undisplaced Fock basis
};

// Coherent-state Fock amplitudes e^{-|a|^2/2} a^n / sqrt(n!), n < count.
Eigen::VectorXcd coherent_amplitudes(Complex alpha, int count);

// The adiabatic reduced state at the given time. n_max from
// choose_truncation or larger. Propagates DegenerateLevel.
BranchedDensity reduced_density(const ModelParams& p, double time, int n_max);

// Synthetic states used by oracles and the validation suite.
BranchedDensity coherent_state_density(Complex alpha, int n_max);
// 1/2 |alpha><alpha| + 1/2 |-alpha><-alpha| (the t = 0 reduced state with
// the displacement folded out).
BranchedDensity symmetric_mixture_density(Complex alpha, int n_max);

// Re(tr plus_block + tr minus_block); 1 up to truncation tail.
double branched_trace(const BranchedDensity& b);

// Default Fock dimension with spill-over margin for the basis change.
int default_fock_dim(int n_max, double shift);

// Undisplaces both branches into the common Fock basis:
//   matrix = D(c)' plus_block D(c) + D(-c)' minus_block D(-c),  c = shift,
// with D the rectangular displacement matrix block. Throws TruncationSpill
// if the conversion loses more than 1e-6 of the trace.
FockDensity to_fock(const BranchedDensity& b, int dim);

struct DensityDiagnostics {
    double trace = 0.0;
    double purity = 0.0;
    double herm_defect = 0.0;
    double min_eig = 0.0;
};

DensityDiagnostics matrix_diagnostics(const FockDensity& f);

// Exact-evolution oracle: dense eigendecomposition of the full composite
// Hamiltonian, evolution of the quasi-Bell initial state, partial trace
// over the qubit. No time-stepping error; t may be sampled arbitrarily.
FockDensity exact_evolve(const ModelParams& p, double time, int dim);

// 1/2 sum |eigenvalues(a - b)|. Throws DimensionMismatch.
double trace_distance(const FockDensity& a, const FockDensity& b);

} // namespace qps
