#include "qps/model.hpp"

#include <cmath>
#include <string>

namespace qps {

void ModelParams::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(delta) || delta < 0.0)
        throw std::invalid_argument("ModelParams: delta must be finite and >= 0");
    if (!finite(epsilon))
        throw std::invalid_argument("ModelParams: epsilon must be finite");
    if (!finite(omega) || omega <= 0.0)
        throw std::invalid_argument("ModelParams: omega must be finite and > 0");
    if (!finite(lambda) || lambda < 0.0)
        throw std::invalid_argument("ModelParams: lambda must be finite and >= 0");
    if (!finite(alpha.real()) || !finite(alpha.imag()))
        throw std::invalid_argument("ModelParams: alpha must be finite");
}

DerivedParams derive_params(const ModelParams& p) {
    p.validate();
    DerivedParams d;
    const double ratio = 2.0 * p.lambda / p.omega;
    d.x = ratio * ratio;
    d.delta_tilde = p.delta * std::exp(-0.5 * d.x);
    d.eps_tilde = 0.5 * p.epsilon;
    d.shift = p.lambda / p.omega;
    d.alpha_plus = p.alpha + Complex(d.shift, 0.0);
    return d;
}

double laguerre(int n, double x) {
    if (n < 0) throw std::invalid_argument("laguerre: n must be >= 0");
    if (n == 0) return 1.0;
    double lm1 = 1.0;       // L_0
    double l = 1.0 - x;     // L_1
    for (int k = 1; k < n; ++k) {
        const double next = ((2.0 * k + 1.0 - x) * l - k * lm1) / (k + 1.0);
        lm1 = l;
        l = next;
    }
    return l;
}

SpectralTable build_spectral_table(const DerivedParams& d, int n_max) {
    if (n_max < 0)
        throw std::invalid_argument("build_spectral_table: n_max must be >= 0");
    SpectralTable t;
    t.n_max = n_max;
    t.eps_tilde = d.eps_tilde;
    const int count = n_max + 1;
    t.delta_n.resize(count);
    t.chi_n.resize(count);
    t.a_plus.resize(count);
    t.a_minus.resize(count);
    t.b_plus.resize(count);
    t.b_minus.resize(count);

    // Laguerre values via the same recurrence, carried across n.
    double lm1 = 0.0, l = 1.0;
    for (int n = 0; n <= n_max; ++n) {
        if (n >= 1) {
            const int k = n - 1;
            const double next =
                (k == 0) ? (1.0 - d.x)
                         : ((2.0 * k + 1.0 - d.x) * l - k * lm1) / (k + 1.0);
            lm1 = l;
            l = next;
        }
        const double dn = -0.5 * d.delta_tilde * l;
        const double chi = std::hypot(dn, d.eps_tilde);
        t.delta_n[n] = dn;
        t.chi_n[n] = chi;
        if (chi <= 0.0) {
            if (d.delta_tilde == 0.0 && d.eps_tilde == 0.0) {
                // Qubit-free limit: split is immaterial, C_n(t) = 1.
                t.a_plus[n] = t.a_minus[n] = 0.5;
                t.b_plus[n] = t.b_minus[n] = 0.5;
                continue;
            }
            throw DegenerateLevel(
                n, "degenerate level n=" + std::to_string(n) +
                       ": chi_n = 0 (eps/2 = 0 and L_n(x) = 0)");
        }
        const double sgn = (n % 2 == 0) ? 1.0 : -1.0;  // (-1)^n
        const double sd = sgn * dn;
        t.a_plus[n] = (chi + d.eps_tilde + sd) / (2.0 * chi);
        t.a_minus[n] = (chi + d.eps_tilde - sd) / (2.0 * chi);
        t.b_plus[n] = (chi - d.eps_tilde + sd) / (2.0 * chi);
        t.b_minus[n] = (chi - d.eps_tilde - sd) / (2.0 * chi);
    }
    return t;
}

Complex level_coefficient(const SpectralTable& t, int n, Parity branch,
                          double time) {
    if (n < 0 || n > t.n_max)
        throw IndexOutOfRange("level_coefficient: n=" + std::to_string(n) +
                              " outside [0, " + std::to_string(t.n_max) + "]");
    const double phase = t.chi_n[n] * time;
    const Complex plus_rot = std::polar(1.0, phase);
    const Complex minus_rot = std::conj(plus_rot);
    if (branch == Parity::plus)
        return t.a_minus[n] * plus_rot + t.b_plus[n] * minus_rot;
    return t.a_plus[n] * plus_rot + t.b_minus[n] * minus_rot;
}

double poisson_tail(double mean, int n) {
    if (mean <= 0.0) return 0.0;
    // First term k = n+1, then ascend until terms stop mattering.
    const int k0 = n + 1;
    double log_term = -mean + k0 * std::log(mean) - std::lgamma(k0 + 1.0);
    double term = std::exp(log_term);
    double sum = 0.0;
    for (int k = k0; ; ++k) {
        sum += term;
        const double ratio = mean / (k + 1.0);
        term *= ratio;
        if (k > mean && term < sum * 1e-18 + 1e-320) break;
        if (k > k0 + 10000) break;
    }
    return sum;
}

int choose_truncation(const DerivedParams& d, double tail_tol) {
    if (!(tail_tol > 0.0 && tail_tol < 1.0))
        throw std::invalid_argument("choose_truncation: tail_tol in (0,1)");
    const double a = std::abs(d.alpha_plus);
    const int floor_n = static_cast<int>(std::ceil(a * a + 10.0 * a + 20.0));
    const double mean = a * a;
    int n = 0;
    while (poisson_tail(mean, n) >= tail_tol) ++n;
    return std::max(n, floor_n);
}

} // namespace qps
