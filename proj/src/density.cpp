#include "qps/density.hpp"

#include <cmath>

#include "qps/dispmat.hpp"

namespace qps {

Eigen::VectorXcd coherent_amplitudes(Complex alpha, int count) {
    Eigen::VectorXcd v(count);
    Complex c = std::exp(Complex{-0.5 * std::norm(alpha), 0.0});
    for (int n = 0; n < count; ++n) {
        v[n] = c;
        c *= alpha / std::sqrt(n + 1.0);
    }
    return v;
}

namespace {

BranchedDensity from_amplitudes(Eigen::VectorXcd plus, Eigen::VectorXcd minus,
                                double shift, double time, Parity parity) {
    BranchedDensity b;
    b.n_max = static_cast<int>(plus.size()) - 1;
    b.shift = shift;
    b.time = time;
    b.parity = parity;
    b.plus_amp = std::move(plus);
    b.minus_amp = std::move(minus);
    b.plus_block = b.plus_amp * b.plus_amp.adjoint();
    b.minus_block = b.minus_amp * b.minus_amp.adjoint();
    return b;
}

} // namespace

BranchedDensity reduced_density(const ModelParams& p, double time, int n_max) {
    const DerivedParams d = derive_params(p);
    const SpectralTable table = build_spectral_table(d, n_max);
    const Parity opposite =
        (p.parity == Parity::plus) ? Parity::minus : Parity::plus;

    const int count = n_max + 1;
    Eigen::VectorXcd coh = coherent_amplitudes(d.alpha_plus, count);
    Eigen::VectorXcd plus(count), minus(count);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Complex rot = std::polar(1.0, -p.omega * time);  // e^{-i omega t}
    Complex rot_n{1.0, 0.0};
    for (int n = 0; n < count; ++n) {
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        plus[n] = inv_sqrt2 * coh[n] * rot_n *
                  level_coefficient(table, n, p.parity, time);
        minus[n] = inv_sqrt2 * sgn * coh[n] * rot_n *
                   std::conj(level_coefficient(table, n, opposite, time));
        rot_n *= rot;
    }
    return from_amplitudes(std::move(plus), std::move(minus), d.shift, time,
                           p.parity);
}

BranchedDensity coherent_state_density(Complex alpha, int n_max) {
    return from_amplitudes(coherent_amplitudes(alpha, n_max + 1),
                           Eigen::VectorXcd::Zero(n_max + 1), 0.0, 0.0,
                           Parity::plus);
}

BranchedDensity symmetric_mixture_density(Complex alpha, int n_max) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    return from_amplitudes(
        inv_sqrt2 * coherent_amplitudes(alpha, n_max + 1),
        inv_sqrt2 * coherent_amplitudes(-alpha, n_max + 1), 0.0, 0.0,
        Parity::plus);
}

double branched_trace(const BranchedDensity& b) {
    return (b.plus_block.trace() + b.minus_block.trace()).real();
}

int default_fock_dim(int n_max, double shift) {
    return n_max +
           static_cast<int>(std::ceil(8.0 * shift * std::sqrt(double(n_max)))) +
           16;
}

FockDensity to_fock(const BranchedDensity& b, int dim) {
    const int count = b.n_max + 1;
    if (dim < count)
        throw std::invalid_argument("to_fock: dim must be >= n_max + 1");

    using RowMajor =
        Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    RowMajor d_plus(count, dim), d_minus(count, dim);
    fill_displacement(Complex{b.shift, 0.0}, count, dim, d_plus.data());
    fill_displacement(Complex{-b.shift, 0.0}, count, dim, d_minus.data());

    FockDensity f;
    f.dim = dim;
    f.matrix = d_plus.adjoint() * b.plus_block * d_plus +
               d_minus.adjoint() * b.minus_block * d_minus;

    const double defect =
        std::abs(f.matrix.trace().real() - branched_trace(b));
    if (defect > 1e-6)
        throw TruncationSpill(defect,
                              "to_fock: conversion trace defect " +
                                  std::to_string(defect) +
                                  " exceeds 1e-6; increase dim");
    return f;
}

DensityDiagnostics matrix_diagnostics(const FockDensity& f) {
    DensityDiagnostics d;
    d.trace = f.matrix.trace().real();
    d.purity = (f.matrix * f.matrix).trace().real();
    d.herm_defect = (f.matrix - f.matrix.adjoint()).cwiseAbs().maxCoeff();
    Eigen::MatrixXcd herm = 0.5 * (f.matrix + f.matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        herm, Eigen::EigenvaluesOnly);
    d.min_eig = solver.eigenvalues().minCoeff();
    return d;
}

FockDensity exact_evolve(const ModelParams& p, double time, int dim) {
    p.validate();
    const int total = 2 * dim;
    // Basis: index q*dim + n with q = 0 <-> sigma_z = +1, q = 1 <-> -1.
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(total, total);
    for (int q = 0; q < 2; ++q) {
        const double sz = (q == 0) ? 1.0 : -1.0;
        const int off = q * dim;
        for (int n = 0; n < dim; ++n) {
            h(off + n, off + n) = p.omega * n - 0.5 * p.epsilon * sz;
            if (n + 1 < dim) {
                const double c = p.lambda * sz * std::sqrt(n + 1.0);
                h(off + n + 1, off + n) = c;
                h(off + n, off + n + 1) = c;
            }
        }
    }
    for (int n = 0; n < dim; ++n) {
        h(n, dim + n) = -0.5 * p.delta;
        h(dim + n, n) = -0.5 * p.delta;
    }

    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(total);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double sign = (p.parity == Parity::plus) ? 1.0 : -1.0;
    psi0.head(dim) = inv_sqrt2 * coherent_amplitudes(p.alpha, dim);
    psi0.tail(dim) = (sign * inv_sqrt2) * coherent_amplitudes(-p.alpha, dim);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    const Eigen::MatrixXd& v = solver.eigenvectors();
    const Eigen::VectorXd& e = solver.eigenvalues();

    Eigen::VectorXcd coeffs = v.transpose() * psi0;
    for (int i = 0; i < total; ++i)
        coeffs[i] *= std::polar(1.0, -e[i] * time);
    Eigen::VectorXcd psi = v * coeffs;

    FockDensity f;
    f.dim = dim;
    f.matrix = psi.head(dim) * psi.head(dim).adjoint() +
               psi.tail(dim) * psi.tail(dim).adjoint();
    return f;
}

double trace_distance(const FockDensity& a, const FockDensity& b) {
    if (a.dim != b.dim)
        throw DimensionMismatch("trace_distance: dimension mismatch");
    Eigen::MatrixXcd diff = a.matrix - b.matrix;
    diff = 0.5 * (diff + diff.adjoint().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        diff, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

} // namespace qps
