#include "qps/dispmat.hpp"

#include <cmath>
#include <cstddef>

namespace qps {

Complex two_f_zero(int m, int n, Complex z) {
    if (m < 0 || n < 0)
        throw std::invalid_argument("two_f_zero: m, n must be >= 0");
    const int r_max = std::min(m, n);
    Complex term{1.0, 0.0};
    Complex sum = term;
    for (int r = 0; r < r_max; ++r) {
        // (-m)_{r+1} / (-m)_r = r - m
        term *= z * static_cast<double>(r - m) * static_cast<double>(r - n) /
                static_cast<double>(r + 1);
        sum += term;
    }
    return sum;
}

namespace {

// Advances M_j = sqrt(j!/(j+d)!) |b|^d e^{-u/2} L_j^{(d)}(u) along a diagonal.
// All M_j are displacement matrix element magnitudes, hence bounded by 1.
struct DiagonalWalk {
    double u;
    int d;
    double m_prev = 0.0;
    double m = 0.0;
    double denom;  // sqrt(j (j+d)) for the current step
    int j = 0;

    DiagonalWalk(double u_, double abs_beta, int d_) : u(u_), d(d_) {
        const double log_m0 = d * std::log(abs_beta) - 0.5 * u -
                              0.5 * std::lgamma(d + 1.0);
        m = std::exp(log_m0);
        denom = 0.0;
    }

    void advance() {
        const double s =
            std::sqrt((j + 1.0) * (j + 1.0 + d));
        const double next = ((2.0 * j + 1.0 + d - u) * m - denom * m_prev) / s;
        m_prev = m;
        m = next;
        denom = s;
        ++j;
    }
};

Complex unit_power(Complex unit, int d) {
    Complex p{1.0, 0.0};
    for (int i = 0; i < d; ++i) p *= unit;
    return p;
}

} // namespace

Complex displacement_element(int m, int k, Complex beta) {
    if (m < 0 || k < 0)
        throw std::invalid_argument("displacement_element: m, k must be >= 0");
    const double u = std::norm(beta);
    if (u == 0.0) return (m == k) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
    const double ab = std::abs(beta);
    const Complex unit = beta / ab;
    const int d = std::abs(m - k);
    const int j_target = std::min(m, k);
    DiagonalWalk walk(u, ab, d);
    for (int j = 0; j < j_target; ++j) walk.advance();
    const Complex phase =
        (m >= k) ? unit_power(unit, d) : unit_power(-std::conj(unit), d);
    return phase * walk.m;
}

Complex displacement_element_series(int m, int k, Complex beta) {
    if (m < 0 || k < 0)
        throw std::invalid_argument("displacement_element_series: m, k >= 0");
    const double u = std::norm(beta);
    if (u == 0.0)
        throw std::invalid_argument(
            "displacement_element_series: undefined at beta = 0");
    const double ab = std::abs(beta);
    const Complex unit = beta / ab;
    const Complex f = two_f_zero(m, k, Complex{-1.0 / u, 0.0});
    const double log_pref = (m + k) * std::log(ab) - 0.5 * u -
                            0.5 * (std::lgamma(m + 1.0) + std::lgamma(k + 1.0));
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    const Complex phase =
        unit_power(unit, m) * unit_power(std::conj(unit), k);
    return sign * phase * std::exp(log_pref) * f;
}

void fill_displacement(Complex beta, int rows, int cols, Complex* out) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("fill_displacement: rows, cols >= 1");
    const std::size_t stride = static_cast<std::size_t>(cols);
    const double u = std::norm(beta);
    if (u == 0.0) {
        for (int m = 0; m < rows; ++m)
            for (int k = 0; k < cols; ++k)
                out[m * stride + k] = (m == k) ? Complex{1.0, 0.0}
                                               : Complex{0.0, 0.0};
        return;
    }
    const double ab = std::abs(beta);
    const Complex unit = beta / ab;

    // m = k + d (lower triangle including the main diagonal)
    Complex phase{1.0, 0.0};
    for (int d = 0; d < rows; ++d) {
        DiagonalWalk walk(u, ab, d);
        const int len = std::min(cols, rows - d);
        for (int k = 0; k < len; ++k) {
            out[static_cast<std::size_t>(k + d) * stride + k] = phase * walk.m;
            walk.advance();
        }
        phase *= unit;
    }
    // k = m + e (upper triangle)
    const Complex upper_unit = -std::conj(unit);
    phase = upper_unit;
    for (int e = 1; e < cols; ++e) {
        DiagonalWalk walk(u, ab, e);
        const int len = std::min(rows, cols - e);
        for (int m = 0; m < len; ++m) {
            out[static_cast<std::size_t>(m) * stride + (m + e)] = phase * walk.m;
            walk.advance();
        }
        phase *= upper_unit;
    }
}

DisplacementMatrix displacement_matrix(Complex beta, int rows, int cols) {
    DisplacementMatrix d;
    d.beta = beta;
    d.rows = rows;
    d.cols = cols;
    d.entries.resize(static_cast<std::size_t>(rows) * cols);
    fill_displacement(beta, rows, cols, d.entries.data());
    return d;
}

} // namespace qps
