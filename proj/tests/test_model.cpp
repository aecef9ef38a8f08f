#include <doctest.h>

#include <cmath>
#include <random>

#include "qps/model.hpp"

using namespace qps;

namespace {

// Independent oracle: explicit power series sum_k (-1)^k C(n,k) x^k / k!,
// in extended precision to keep the oracle itself below 1e-12 error.
long double laguerre_series(int n, long double x) {
    long double sum = 0.0L;
    long double binom = 1.0L;  // C(n, 0)
    long double xpow = 1.0L;
    long double kfact = 1.0L;
    for (int k = 0; k <= n; ++k) {
        const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
        sum += sign * binom * xpow / kfact;
        binom = binom * (n - k) / (k + 1.0L);
        xpow *= x;
        kfact *= (k + 1.0L);
    }
    return sum;
}

ModelParams fig1_params() {
    return ModelParams{};  // defaults are the Fig. 1 set
}

} // namespace

TEST_CASE("derived parameters") {
    ModelParams p = fig1_params();

    SUBCASE("coupling 0.3 gives x = 0.36") {
        const DerivedParams d = derive_params(p);
        CHECK(d.x == doctest::Approx(0.36).epsilon(1e-15));
        CHECK(d.delta_tilde ==
              doctest::Approx(0.15 * std::exp(-0.18)).epsilon(1e-15));
        CHECK(d.eps_tilde == doctest::Approx(0.015).epsilon(1e-15));
        CHECK(d.alpha_plus.real() == doctest::Approx(3.3).epsilon(1e-15));
        CHECK(d.alpha_plus.imag() == 0.0);
        CHECK(d.shift == doctest::Approx(0.3));
        CHECK(d.delta_tilde <= p.delta);
    }

    SUBCASE("zero coupling is the identity map") {
        p.lambda = 0.0;
        const DerivedParams d = derive_params(p);
        CHECK(d.x == 0.0);
        CHECK(d.delta_tilde == p.delta);
        CHECK(d.alpha_plus == p.alpha);
        CHECK(d.shift == 0.0);
    }

    SUBCASE("alpha_plus - alpha = shift exactly") {
        p.alpha = Complex{1.25, -0.75};
        p.lambda = 0.41;
        const DerivedParams d = derive_params(p);
        CHECK((d.alpha_plus - p.alpha).real() == d.shift);
        CHECK((d.alpha_plus - p.alpha).imag() == 0.0);
    }

    SUBCASE("invalid inputs rejected") {
        p.omega = 0.0;
        CHECK_THROWS_AS(derive_params(p), std::invalid_argument);
        p = fig1_params();
        p.delta = -0.1;
        CHECK_THROWS_AS(derive_params(p), std::invalid_argument);
        p = fig1_params();
        p.lambda = std::nan("");
        CHECK_THROWS_AS(derive_params(p), std::invalid_argument);
    }
}

TEST_CASE("laguerre recurrence") {
    CHECK(laguerre(0, 0.36) == 1.0);
    CHECK(laguerre(0, -3.7) == 1.0);
    CHECK(laguerre(1, 0.36) == doctest::Approx(0.64).epsilon(1e-15));

    SUBCASE("n = 5 matches the direct series") {
        const double expected = static_cast<double>(laguerre_series(5, 2.0L));
        CHECK(laguerre(5, 2.0) == doctest::Approx(expected).epsilon(1e-13));
    }

    SUBCASE("series oracle over n <= 30, |x| <= 4") {
        for (int n = 0; n <= 30; ++n) {
            for (double x : {-4.0, -2.5, -0.7, 0.0, 0.36, 1.0, 2.3, 4.0}) {
                const double ref =
                    static_cast<double>(laguerre_series(n, (long double)x));
                const double got = laguerre(n, x);
                CHECK(std::abs(got - ref) <=
                      1e-10 * std::max(1e-300, std::abs(ref)));
            }
        }
    }
}

TEST_CASE("spectral table") {
    SUBCASE("epsilon = 0, lambda = 0 closed form at n = 0") {
        ModelParams p = fig1_params();
        p.epsilon = 0.0;
        p.lambda = 0.0;
        const SpectralTable t = build_spectral_table(derive_params(p), 4);
        CHECK(t.delta_n[0] == doctest::Approx(-0.075).epsilon(1e-15));
        CHECK(t.chi_n[0] == doctest::Approx(0.075).epsilon(1e-15));
        // delta_0 < 0, so the +delta_0 combination vanishes
        CHECK(t.a_plus[0] == doctest::Approx(0.0));
        CHECK(t.a_minus[0] == doctest::Approx(1.0));
        CHECK(t.b_plus[0] == doctest::Approx(0.0));
        CHECK(t.b_minus[0] == doctest::Approx(1.0));
    }

    SUBCASE("normalization identity across random parameter sets") {
        std::mt19937 rng(421);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            ModelParams p;
            p.delta = 0.5 * uni(rng);
            p.epsilon = 0.2 * (uni(rng) - 0.5);
            p.lambda = 0.6 * uni(rng);
            p.alpha = Complex{4.0 * uni(rng), 2.0 * (uni(rng) - 0.5)};
            const SpectralTable t = build_spectral_table(derive_params(p), 80);
            for (int n = 0; n <= 80; ++n) {
                CHECK(std::abs(t.a_minus[n] + t.b_plus[n] - 1.0) <= 1e-12);
                CHECK(std::abs(t.a_plus[n] + t.b_minus[n] - 1.0) <= 1e-12);
            }
        }
    }

    SUBCASE("figure parameters give finite rows with chi > 0") {
        const SpectralTable t =
            build_spectral_table(derive_params(fig1_params()), 100);
        for (int n = 0; n <= 100; ++n) {
            CHECK(std::isfinite(t.delta_n[n]));
            CHECK(t.chi_n[n] > 0.0);
            CHECK(std::isfinite(t.a_plus[n]));
            CHECK(std::isfinite(t.b_minus[n]));
        }
    }

    SUBCASE("accidental degeneracy is an error with the offending level") {
        // x = 1 makes L_1(x) = 0 exactly; with epsilon = 0 that level is
        // degenerate.
        ModelParams p = fig1_params();
        p.epsilon = 0.0;
        p.lambda = 0.5;  // (2*0.5)^2 = 1
        try {
            build_spectral_table(derive_params(p), 4);
            FAIL("expected DegenerateLevel");
        } catch (const DegenerateLevel& e) {
            CHECK(e.level() == 1);
        }
    }

    SUBCASE("qubit-free limit is exact, not an error") {
        ModelParams p = fig1_params();
        p.delta = 0.0;
        p.epsilon = 0.0;
        const SpectralTable t = build_spectral_table(derive_params(p), 10);
        for (int n = 0; n <= 10; ++n) {
            CHECK(level_coefficient(t, n, Parity::plus, 17.3) ==
                  Complex{1.0, 0.0});
            CHECK(level_coefficient(t, n, Parity::minus, 17.3) ==
                  Complex{1.0, 0.0});
        }
    }

    SUBCASE("tables scale with omega when inputs are expressed as ratios") {
        ModelParams p1 = fig1_params();
        ModelParams p2 = p1;
        p2.omega = 2.0;
        p2.delta *= 2.0;
        p2.epsilon *= 2.0;
        p2.lambda *= 2.0;
        const SpectralTable t1 = build_spectral_table(derive_params(p1), 40);
        const SpectralTable t2 = build_spectral_table(derive_params(p2), 40);
        for (int n = 0; n <= 40; ++n) {
            CHECK(t2.delta_n[n] ==
                  doctest::Approx(2.0 * t1.delta_n[n]).epsilon(1e-14));
            CHECK(t2.chi_n[n] ==
                  doctest::Approx(2.0 * t1.chi_n[n]).epsilon(1e-14));
            CHECK(t2.a_plus[n] == doctest::Approx(t1.a_plus[n]).epsilon(1e-14));
            CHECK(t2.b_minus[n] ==
                  doctest::Approx(t1.b_minus[n]).epsilon(1e-14));
        }
    }
}

TEST_CASE("level coefficients") {
    const SpectralTable t = build_spectral_table(derive_params(fig1_params()), 64);

    SUBCASE("value 1 at t = 0") {
        for (int n = 0; n <= 64; ++n) {
            CHECK(std::abs(level_coefficient(t, n, Parity::plus, 0.0) - 1.0) <=
                  1e-12);
            CHECK(std::abs(level_coefficient(t, n, Parity::minus, 0.0) - 1.0) <=
                  1e-12);
        }
    }

    SUBCASE("|C+|^2 + |C-|^2 = 2 at random samples") {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> tdist(0.0, 200.0);
        std::uniform_int_distribution<int> ndist(0, 64);
        for (int trial = 0; trial < 500; ++trial) {
            const int n = ndist(rng);
            const double time = tdist(rng);
            const double s =
                std::norm(level_coefficient(t, n, Parity::plus, time)) +
                std::norm(level_coefficient(t, n, Parity::minus, time));
            CHECK(std::abs(s - 2.0) <= 1e-12);
        }
    }

    SUBCASE("epsilon = 0, n even gives a pure phase") {
        ModelParams p = fig1_params();
        p.epsilon = 0.0;
        const SpectralTable t0 = build_spectral_table(derive_params(p), 20);
        for (int n = 0; n <= 20; n += 2) {
            for (double time : {0.7, 13.0, 91.4}) {
                const Complex c = level_coefficient(t0, n, Parity::plus, time);
                CHECK(std::abs(std::abs(c) - 1.0) <= 1e-12);
                // phase is e^{+-i chi_n t}
                const double expected = t0.chi_n[n] * time;
                CHECK(std::abs(std::cos(expected) - c.real()) <= 1e-12);
            }
        }
    }

    SUBCASE("index bounds") {
        CHECK_THROWS_AS(level_coefficient(t, -1, Parity::plus, 0.0),
                        IndexOutOfRange);
        CHECK_THROWS_AS(level_coefficient(t, 65, Parity::plus, 0.0),
                        IndexOutOfRange);
    }
}

TEST_CASE("truncation choice") {
    SUBCASE("vacuum gets the fixed floor") {
        ModelParams p;
        p.alpha = Complex{0.0, 0.0};
        p.lambda = 0.0;
        CHECK(choose_truncation(derive_params(p), 1e-12) == 20);
    }

    SUBCASE("postcondition: recomputed tail below tolerance") {
        const DerivedParams d = derive_params(fig1_params());  // |a+| = 3.3
        const int n = choose_truncation(d, 1e-12);
        CHECK(poisson_tail(std::norm(d.alpha_plus), n) < 1e-12);
        CHECK(n >= 64);  // floor ceil(10.89 + 33 + 20)
    }

    SUBCASE("monotone in the tolerance") {
        const DerivedParams d = derive_params(fig1_params());
        CHECK(choose_truncation(d, 1e-14) >= choose_truncation(d, 1e-8));
    }

    SUBCASE("rejects nonsense tolerances") {
        const DerivedParams d = derive_params(fig1_params());
        CHECK_THROWS_AS(choose_truncation(d, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(choose_truncation(d, 1.5), std::invalid_argument);
    }
}
