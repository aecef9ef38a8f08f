#include "qps/phasespace.hpp"

#include <cmath>
#include <numbers>

#include "qps/dispmat.hpp"
#include "qps/parallel.hpp"

namespace qps {

namespace {

constexpr double kPi = std::numbers::pi;

Field make_field(const PhaseGrid& g, FieldKind kind, double time) {
    Field f;
    f.grid = g;
    f.kind = kind;
    f.time = time;
    f.values.assign(g.size(), 0.0);
    return f;
}

} // namespace

PhaseGrid make_grid(double half_width, double spacing) {
    if (!(spacing > 0.0) || !(half_width >= spacing) ||
        !std::isfinite(half_width) || !std::isfinite(spacing))
        throw std::invalid_argument(
            "make_grid: require half_width >= spacing > 0");
    PhaseGrid g;
    g.half_width = half_width;
    g.spacing = spacing;
    g.nx = g.ny =
        static_cast<int>(std::lround(2.0 * half_width / spacing)) + 1;
    return g;
}

double default_half_width(const ModelParams& p) {
    return std::abs(p.alpha) + p.lambda / p.omega + 5.0;
}

Field wigner_field(const BranchedDensity& b, const PhaseGrid& g,
                   WignerStats* stats) {
    const int count = b.n_max + 1;
    Field f = make_field(g, FieldKind::wigner, b.time);

    // sa[n] = (-1)^n amp[n]; the kernel element is D_mn(2 beta_branch).
    Eigen::VectorXcd sa_plus(count), sa_minus(count);
    for (int n = 0; n < count; ++n) {
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
        sa_plus[n] = sgn * b.plus_amp[n];
        sa_minus[n] = sgn * b.minus_amp[n];
    }

    std::vector<double> row_residue(g.ny, 0.0);
    parallel_for(0, static_cast<std::size_t>(g.ny), [&](std::size_t iy) {
        std::vector<Complex> kernel(static_cast<std::size_t>(count) * count);
        double residue = 0.0;
        for (int ix = 0; ix < g.nx; ++ix) {
            const Complex beta = g.point(ix, static_cast<int>(iy));
            Complex acc{0.0, 0.0};
            for (int branch = 0; branch < 2; ++branch) {
                const bool plus = (branch == 0);
                const Complex shifted =
                    beta + Complex{plus ? b.shift : -b.shift, 0.0};
                const Eigen::VectorXcd& amp = plus ? b.plus_amp : b.minus_amp;
                const Eigen::VectorXcd& sa = plus ? sa_plus : sa_minus;
                fill_displacement(2.0 * shifted, count, count, kernel.data());
                for (int m = 0; m < count; ++m) {
                    const Complex am = std::conj(amp[m]);
                    const Complex* row = kernel.data() +
                                         static_cast<std::size_t>(m) * count;
                    Complex inner{0.0, 0.0};
                    for (int n = 0; n < count; ++n) inner += sa[n] * row[n];
                    acc += am * inner;
                }
            }
            f.at(ix, static_cast<int>(iy)) = (2.0 / kPi) * acc.real();
            residue = std::max(residue, std::abs(acc.imag()) * (2.0 / kPi));
        }
        row_residue[iy] = residue;
    });

    if (stats) {
        stats->max_imag_residue = 0.0;
        for (double r : row_residue)
            stats->max_imag_residue = std::max(stats->max_imag_residue, r);
    }
    return f;
}

int series_k_max(const BranchedDensity& b, const PhaseGrid& g) {
    const double reach =
        std::numbers::sqrt2 * g.half_width + std::abs(b.shift) +
        std::sqrt(b.n_max + 1.0);
    const double kc = reach * reach;
    return static_cast<int>(std::ceil(kc + 10.0 * std::sqrt(kc) + 20.0));
}

Field wigner_field_series(const BranchedDensity& b, const PhaseGrid& g,
                          int k_max) {
    const int count = b.n_max + 1;
    const int k_count = k_max + 1;
    Field f = make_field(g, FieldKind::wigner, b.time);

    parallel_for(0, static_cast<std::size_t>(g.ny), [&](std::size_t iy) {
        std::vector<Complex> disp(static_cast<std::size_t>(count) * k_count);
        std::vector<Complex> amp_k(k_count);
        for (int ix = 0; ix < g.nx; ++ix) {
            const Complex beta = g.point(ix, static_cast<int>(iy));
            double value = 0.0;
            for (int branch = 0; branch < 2; ++branch) {
                const bool plus = (branch == 0);
                const Complex shifted =
                    beta + Complex{plus ? b.shift : -b.shift, 0.0};
                const Eigen::VectorXcd& amp = plus ? b.plus_amp : b.minus_amp;
                fill_displacement(shifted, count, k_count, disp.data());
                std::fill(amp_k.begin(), amp_k.end(), Complex{0.0, 0.0});
                for (int m = 0; m < count; ++m) {
                    const Complex am = std::conj(amp[m]);
                    const Complex* row =
                        disp.data() + static_cast<std::size_t>(m) * k_count;
                    for (int k = 0; k < k_count; ++k) amp_k[k] += am * row[k];
                }
                double s = 0.0;
                for (int k = 0; k < k_count; ++k) {
                    const double w = std::norm(amp_k[k]);
                    s += (k % 2 == 0) ? w : -w;
                }
                value += s;
            }
            f.at(ix, static_cast<int>(iy)) = (2.0 / kPi) * value;
        }
    });
    return f;
}

Field husimi_field(const BranchedDensity& b, const PhaseGrid& g) {
    const int count = b.n_max + 1;
    Field f = make_field(g, FieldKind::husimi, b.time);

    parallel_for(0, static_cast<std::size_t>(g.ny), [&](std::size_t iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            const Complex beta = g.point(ix, static_cast<int>(iy));
            double q = 0.0;
            for (int branch = 0; branch < 2; ++branch) {
                const bool plus = (branch == 0);
                const Complex shifted =
                    beta + Complex{plus ? b.shift : -b.shift, 0.0};
                const Eigen::VectorXcd& amp = plus ? b.plus_amp : b.minus_amp;
                // term_n = e^{-|z|^2/2} z*^n / sqrt(n!), all bounded by 1
                Complex term{std::exp(-0.5 * std::norm(shifted)), 0.0};
                const Complex zc = std::conj(shifted);
                Complex sum{0.0, 0.0};
                for (int n = 0; n < count; ++n) {
                    sum += amp[n] * term;
                    term *= zc / std::sqrt(n + 1.0);
                }
                q += std::norm(sum);
            }
            f.at(ix, static_cast<int>(iy)) = q / kPi;
        }
    });
    return f;
}

Field husimi_weak_closed(const ModelParams& p, const PhaseGrid& g,
                         double time) {
    const DerivedParams d = derive_params(p);
    if (d.delta_tilde == 0.0 && p.epsilon != 0.0)
        throw std::domain_error(
            "husimi_weak_closed: requires delta > 0 when epsilon != 0");
    const double s = (p.parity == Parity::plus) ? 1.0 : -1.0;
    const double x = d.x;
    const double tau = d.delta_tilde * time;
    const double cx = std::cos(0.5 * x * tau);
    const double sx = std::sin(0.5 * x * tau);
    const double r1 = (p.epsilon == 0.0) ? 0.0 : p.epsilon / d.delta_tilde;
    const double r2 = 0.5 * r1 * r1;
    const double half_tau = 0.5 * tau;
    const double skew_tau = 0.5 * (1.0 - x) * tau;
    const Complex rot = std::polar(1.0, -p.omega * time);
    const Complex i_unit{0.0, 1.0};
    const double mu = std::norm(d.alpha_plus);

    Field f = make_field(g, FieldKind::husimi, time);
    parallel_for(0, static_cast<std::size_t>(g.ny), [&](std::size_t iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            const Complex beta = g.point(ix, static_cast<int>(iy));
            const Complex beta_p = beta + Complex{d.shift, 0.0};
            const Complex beta_m = beta - Complex{d.shift, 0.0};
            const Complex phi = d.alpha_plus * std::conj(beta_p) * rot;
            const Complex psi = d.alpha_plus * std::conj(beta_m) * rot;
            const Complex phi_par = phi * cx, phi_perp = phi * sx;
            const Complex psi_par = psi * cx, psi_perp = psi * sx;

            Complex xa =
                std::exp(phi_par) * std::cos(phi_perp - half_tau) +
                s * i_unit * std::exp(-phi_par) * std::sin(phi_perp + half_tau) -
                i_unit * r1 * std::exp(phi_par) *
                    (std::sin(phi_perp - half_tau) +
                     x * phi * std::sin(phi_perp - skew_tau)) -
                s * i_unit * r2 * std::exp(-phi_par) *
                    (std::sin(phi_perp + half_tau) -
                     2.0 * x * phi * std::sin(phi_perp + skew_tau));
            Complex ya =
                std::exp(-psi_par) * std::cos(psi_perp + half_tau) -
                s * i_unit * std::exp(psi_par) * std::sin(psi_perp - half_tau) -
                i_unit * r1 * std::exp(-psi_par) *
                    (std::sin(psi_perp + half_tau) -
                     x * psi * std::sin(psi_perp + skew_tau)) +
                s * i_unit * r2 * std::exp(psi_par) *
                    (std::sin(psi_perp - half_tau) +
                     2.0 * x * psi * std::sin(psi_perp - skew_tau));

            const double scale_p = std::exp(-0.5 * (mu + std::norm(beta_p)));
            const double scale_m = std::exp(-0.5 * (mu + std::norm(beta_m)));
            f.at(ix, static_cast<int>(iy)) =
                (std::norm(scale_p * xa) + std::norm(scale_m * ya)) /
                (2.0 * kPi);
        }
    });
    return f;
}

Field smooth_w_to_q(const Field& w) {
    if (w.kind != FieldKind::wigner)
        throw KindMismatch("smooth_w_to_q: input must be a Wigner field");
    const PhaseGrid& g = w.grid;
    const double h = g.spacing;
    const int radius = static_cast<int>(std::floor(4.0 / h + 1e-12));
    std::vector<double> weight(radius + 1);
    for (int j = 0; j <= radius; ++j)
        weight[j] = std::exp(-2.0 * (j * h) * (j * h));

    // Separable two-pass convolution; zero outside the grid.
    Field tmp = make_field(g, FieldKind::husimi, w.time);
    parallel_for(0, static_cast<std::size_t>(g.ny), [&](std::size_t iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            double acc = 0.0;
            const int j0 = std::max(-radius, -ix);
            const int j1 = std::min(radius, g.nx - 1 - ix);
            for (int j = j0; j <= j1; ++j)
                acc += weight[std::abs(j)] * w.at(ix + j, static_cast<int>(iy));
            tmp.at(ix, static_cast<int>(iy)) = acc;
        }
    });
    Field out = make_field(g, FieldKind::husimi, w.time);
    const double prefactor = (2.0 / kPi) * h * h;
    parallel_for(0, static_cast<std::size_t>(g.ny), [&](std::size_t iy) {
        const int y = static_cast<int>(iy);
        for (int ix = 0; ix < g.nx; ++ix) {
            double acc = 0.0;
            const int j0 = std::max(-radius, -y);
            const int j1 = std::min(radius, g.ny - 1 - y);
            for (int j = j0; j <= j1; ++j)
                acc += weight[std::abs(j)] * tmp.at(ix, y + j);
            out.at(ix, y) = prefactor * acc;
        }
    });
    return out;
}

PCoefficients p_coefficients(const ModelParams& p, double time, int n_max) {
    const DerivedParams d = derive_params(p);
    const SpectralTable table = build_spectral_table(d, n_max);
    const Parity opposite =
        (p.parity == Parity::plus) ? Parity::minus : Parity::plus;
    const int count = n_max + 1;

    std::vector<Complex> c_par(count), c_opp(count), factor(count),
        rot_n(count);
    const Complex rot = std::polar(1.0, -p.omega * time);
    Complex fac{1.0, 0.0}, rn{1.0, 0.0};
    for (int n = 0; n < count; ++n) {
        c_par[n] = level_coefficient(table, n, p.parity, time);
        c_opp[n] = level_coefficient(table, n, opposite, time);
        factor[n] = fac;  // alpha_plus^n / n!
        rot_n[n] = rn;    // e^{-i n omega t}
        fac *= d.alpha_plus / static_cast<double>(n + 1);
        rn *= rot;
    }

    PCoefficients out;
    out.shift = d.shift;
    out.time = time;
    out.records.reserve(2 * static_cast<std::size_t>(count) * count);
    const double base = 0.5 * std::exp(-std::norm(d.alpha_plus));
    for (int n = 0; n < count; ++n) {
        for (int m = 0; m < count; ++m) {
            const Complex pref = base * factor[n] * std::conj(factor[m]) *
                                 rot_n[n] * std::conj(rot_n[m]);
            const double sgn = ((n + m) % 2 == 0) ? 1.0 : -1.0;
            out.records.push_back(
                {n, m, PBranch::plus_shift,
                 pref * sgn * c_par[n] * std::conj(c_par[m])});
            out.records.push_back(
                {n, m, PBranch::minus_shift,
                 pref * std::conj(c_opp[n]) * c_opp[m]});
        }
    }
    return out;
}

} // namespace qps
