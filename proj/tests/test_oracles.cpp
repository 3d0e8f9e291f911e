#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pwf/oracles.hpp"
#include "pwf/sweep.hpp"

using namespace pwf;

TEST_CASE("difference_power on polynomials") {
    // g(k) = 3k^2 + k + 7: Delta^2 g = 3 * 2! = 6, Delta^3 g = 0, exactly.
    auto g = [](long k) { return BigInt(3) * k * k + k + 7; };
    CHECK(difference_power(g, 2, -5) == 6);
    CHECK(difference_power(g, 2, 100) == 6);
    CHECK(difference_power(g, 3, 9) == 0);

    auto one = [](long) { return BigInt(1); };
    for (int d = 1; d <= 6; ++d) CHECK(difference_power(one, d, 3) == 0);

    // Property: 500 random integer polynomials, exact leading term then zero.
    std::mt19937_64 rng(2);
    for (int c = 0; c < 500; ++c) {
        const int n = int(rng() % 5);
        const long k = long(rng() % 200) - 100;
        std::vector<long> a(n + 1);
        for (auto& x : a) x = long(rng() % 19) - 9;
        if (a[n] == 0) a[n] = 4;
        auto poly = [&a, n](long kk) {
            BigInt v = 0, p = 1;
            for (int i = 0; i <= n; ++i) {
                v += BigInt(a[i]) * p;
                p *= kk;
            }
            return v;
        };
        CHECK(difference_power(poly, n, k) == BigInt(a[n]) * big_factorial(n));
        CHECK(difference_power(poly, n + 1, k) == 0);
    }
}

TEST_CASE("script_F special values") {
    CHECK(script_F(1, 0, 1) == 2);
    for (int d = 0; d <= 8; ++d) {
        for (int s = 0; s <= d + 1; ++s) {
            for (int t = s; t <= d; ++t) CHECK(script_F(d, t, s) == 0);
            if (s >= 1) {
                const BigInt expect =
                    ((d + 1) % 2 ? -1 : 1) * big_factorial(d + 1 - s) * big_binomial(d + 1, s);
                CHECK(script_F(d, s - 1, s) == expect);
            }
        }
    }
    CHECK_THROWS_AS(script_F(3, 4, 0), ConfigError);
}

TEST_CASE("binom_fraction_sum values and decay") {
    CHECK(binom_fraction_sum(1, 1, 2) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(binom_fraction_sum(3, 0, 10) == doctest::Approx(1e-3).epsilon(1e-15));

    for (int l = 1; l <= 3; ++l) {
        for (int d = 1; d <= 3; ++d) {
            std::vector<double> ks, vs;
            for (double k = 100; k <= 1e5; k *= 1.6) {
                ks.push_back(k);
                vs.push_back(std::abs(binom_fraction_sum(l, d, long(k))));
            }
            const auto fit = fit_loglog(ks, vs, 0.0);
            CHECK(std::abs(fit.slope - double(-(d + l))) < 0.05);
        }
    }
    CHECK_THROWS_AS(binom_fraction_sum(0, 1, 10), ConfigError);
    CHECK_THROWS_AS(binom_fraction_sum(1, 5, 5), ConfigError);
}

TEST_CASE("basic recurrence residual vanishes") {
    {
        const auto [res, scale] = basic_recurrence_residual({0.3, 0.4}, {0.0}, 0, 7);
        CHECK(std::abs(res) == 0.0);
        (void)scale;
    }
    {
        const auto [res, scale] =
            basic_recurrence_residual({0.9, -0.1}, {0.0, 0.0, 0.0}, 2, 13);
        CHECK(std::abs(res) == 0.0);
        (void)scale;
    }
    std::mt19937_64 rng(8);
    auto u = [&](double a, double b) { return a + (b - a) * double(rng() >> 11) * 0x1.0p-53; };
    for (int c = 0; c < 500; ++c) {
        const int n = int(rng() % 6);
        const long k = 1 + long(rng() % 100);
        const std::complex<double> omega = std::polar(u(0.5, 1.5), u(-3.1, 3.1));
        std::vector<double> a(n + 1);
        for (auto& x : a) x = u(-2.0, 2.0);
        const auto [res, scale] = basic_recurrence_residual(omega, a, n, k);
        CHECK(std::abs(res) <= 1e-9 * std::max(scale, 1e-300));
    }
}
