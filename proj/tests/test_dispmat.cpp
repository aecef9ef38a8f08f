#include <doctest.h>

#include <cmath>
#include <random>

#include "qps/dispmat.hpp"

using namespace qps;

namespace {

// Exact-rational oracle for the terminating hypergeometric sum at
// z = p/q: accumulates numerator/denominator in 64-bit integers.
double two_f_zero_rational(int m, int n, long zp, long zq) {
    // sum_r (-m)_r (-n)_r z^r / r!
    long double sum = 0.0L;
    for (int r = 0; r <= std::min(m, n); ++r) {
        long long num = 1, den = 1;
        for (int i = 0; i < r; ++i) {
            num *= (i - m) * (i - n) * zp;
            den *= (i + 1) * zq;
        }
        sum += static_cast<long double>(num) / den;
    }
    return static_cast<double>(sum);
}

} // namespace

TEST_CASE("terminating hypergeometric sum") {
    SUBCASE("empty Pochhammer product") {
        CHECK(two_f_zero(0, 5, Complex{2.3, -1.0}) == Complex{1.0, 0.0});
        CHECK(two_f_zero(7, 0, Complex{-0.5, 0.0}) == Complex{1.0, 0.0});
    }

    SUBCASE("single term m = n = 1") {
        const Complex z{0.37, -0.81};
        const Complex got = two_f_zero(1, 1, z);
        CHECK(std::abs(got - (Complex{1.0, 0.0} + z)) <= 1e-15);
    }

    SUBCASE("m = 3, n = 2 at z = -1/4 against the rational oracle") {
        const double expected = two_f_zero_rational(3, 2, -1, 4);
        CHECK(expected == -0.125);  // 1 - 3/2 + 3/8
        const Complex got = two_f_zero(3, 2, Complex{-0.25, 0.0});
        CHECK(got.real() == doctest::Approx(expected).epsilon(1e-15));
        CHECK(got.imag() == 0.0);
    }

    SUBCASE("rational oracle across small orders") {
        for (int m = 0; m <= 6; ++m)
            for (int n = 0; n <= 5; ++n) {
                const double expected = two_f_zero_rational(m, n, -3, 8);
                const Complex got = two_f_zero(m, n, Complex{-0.375, 0.0});
                CHECK(std::abs(got.real() - expected) <=
                      1e-13 * std::max(1.0, std::abs(expected)));
            }
    }
}

TEST_CASE("displacement elements") {
    SUBCASE("ground-to-ground is the Gaussian overlap") {
        for (Complex b : {Complex{0.5, 0.0}, Complex{-1.2, 2.1}}) {
            const Complex got = displacement_element(0, 0, b);
            CHECK(std::abs(got - std::exp(-0.5 * std::norm(b))) <= 1e-15);
        }
    }

    SUBCASE("zero displacement is the identity") {
        for (int m = 0; m < 6; ++m)
            for (int k = 0; k < 6; ++k) {
                const Complex got = displacement_element(m, k, Complex{});
                CHECK(got == (m == k ? Complex{1.0, 0.0} : Complex{0.0, 0.0}));
            }
    }

    SUBCASE("first column gives coherent-state amplitudes") {
        const Complex b{1.3, -0.4};
        Complex pow{1.0, 0.0};
        double fact = 1.0;
        for (int m = 0; m < 25; ++m) {
            const Complex expected =
                pow * std::exp(-0.5 * std::norm(b)) / std::sqrt(fact);
            CHECK(std::abs(displacement_element(m, 0, b) - expected) <= 1e-13);
            pow *= b;
            fact *= (m + 1.0);
        }
    }

    SUBCASE("two evaluation routes agree to 1e-9 relative") {
        std::mt19937 rng(99);
        std::uniform_real_distribution<double> phase(0.0, 6.28318);
        std::uniform_int_distribution<int> order(0, 40);
        for (double mag : {1e-3, 1e-2, 0.1, 0.5, 1.0, 2.7, 5.0, 8.0}) {
            const Complex b = std::polar(mag, phase(rng));
            for (int trial = 0; trial < 40; ++trial) {
                const int m = order(rng), k = order(rng);
                const Complex a = displacement_element(m, k, b);
                const Complex c = displacement_element_series(m, k, b);
                const double scale = std::max(std::abs(a), std::abs(c));
                // absolute floor guards accidental Laguerre-zero proximity
                CHECK(std::abs(a - c) <= 1e-9 * scale + 1e-16);
            }
        }
    }

    SUBCASE("series route rejects beta = 0") {
        CHECK_THROWS_AS(displacement_element_series(1, 1, Complex{}),
                        std::invalid_argument);
    }
}

TEST_CASE("displacement matrix") {
    SUBCASE("identity block at beta = 0") {
        const DisplacementMatrix d = displacement_matrix(Complex{}, 5, 8);
        for (int m = 0; m < 5; ++m)
            for (int k = 0; k < 8; ++k)
                CHECK(d(m, k) == (m == k ? Complex{1.0, 0.0} : Complex{0.0, 0.0}));
    }

    SUBCASE("entries agree element-wise with the single-element path") {
        const Complex b{0.9, -1.7};
        const DisplacementMatrix d = displacement_matrix(b, 12, 17);
        for (int m = 0; m < 12; ++m)
            for (int k = 0; k < 17; ++k)
                CHECK(std::abs(d(m, k) - displacement_element(m, k, b)) <=
                      1e-14);
    }

    SUBCASE("row orthonormality defect below the occupation tail bound") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> phase(0.0, 6.28318);
        for (double mag : {0.7, 2.0, 3.5}) {
            const Complex b = std::polar(mag, phase(rng));
            const int rows = 16, cols = 70;
            const DisplacementMatrix d = displacement_matrix(b, rows, cols);
            for (int m = 0; m < rows; ++m) {
                double row = 0.0;
                for (int k = 0; k < cols; ++k) row += std::norm(d(m, k));
                const double defect = std::abs(1.0 - row);
                // support-edge Poisson bound, plus a rounding floor
                const double bound = poisson_tail(
                    (std::sqrt(double(m)) + mag) * (std::sqrt(double(m)) + mag),
                    cols - 1);
                CHECK(defect <= std::max(bound, 1e-13));
            }
        }
    }

    SUBCASE("truncated blocks are unitary: D D' = I") {
        const Complex b{1.1, 0.6};
        const int n = 24, wide = 90;  // wide enough that tails are negligible
        const DisplacementMatrix d = displacement_matrix(b, n, wide);
        for (int m = 0; m < n; ++m) {
            for (int m2 = 0; m2 < n; ++m2) {
                Complex acc{0.0, 0.0};
                for (int k = 0; k < wide; ++k)
                    acc += d(m, k) * std::conj(d(m2, k));
                const Complex expected =
                    (m == m2) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
                CHECK(std::abs(acc - expected) <= 1e-12);
            }
        }
    }
}

TEST_CASE("summation identity collapsing the alternating series") {
    // sum_k (-1)^k x^k/k! F(-k,-m;-1/x) F(-k,-n;-1/x)
    //   = 2^{n+m} e^{-x} F(-m,-n;-1/(4x))
    for (double x : {0.25, 1.0, 4.0}) {
        for (int m = 0; m <= 12; ++m) {
            for (int n = 0; n <= 12; ++n) {
                double sum = 0.0;
                double xk = 1.0;  // x^k / k!
                for (int k = 0;; ++k) {
                    const double fm =
                        two_f_zero(k, m, Complex{-1.0 / x, 0.0}).real();
                    const double fn =
                        two_f_zero(k, n, Complex{-1.0 / x, 0.0}).real();
                    const double term = ((k % 2 == 0) ? 1.0 : -1.0) * xk * fm * fn;
                    sum += term;
                    xk *= x / (k + 1.0);
                    if (k > 2 * (m + n) + 4 * x + 20 &&
                        std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum)))
                        break;
                    REQUIRE(k < 500);
                }
                const double rhs =
                    std::pow(2.0, n + m) * std::exp(-x) *
                    two_f_zero(m, n, Complex{-1.0 / (4.0 * x), 0.0}).real();
                CHECK(std::abs(sum - rhs) <= 1e-8 * std::abs(rhs));
            }
        }
    }
}
