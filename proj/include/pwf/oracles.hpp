// Independent implementations of the discrete-difference identities the main
// algebra relies on. Shipped in the library, consumed by tests and the
// `identities` CLI subcommand.
#pragma once

#include <complex>
#include <type_traits>
#include <utility>
#include <vector>

#include "pwf/errors.hpp"
#include "pwf/rational.hpp"

namespace pwf {

// Delta^d g(k) = (-1)^d sum_j (-1)^j C(d,j) g(k+j). Exact whenever g returns
// an exact type (BigInt/BigRat).
template <class F>
auto difference_power(F&& g, int d, long k) -> std::decay_t<decltype(g(k))> {
    if (d < 0) throw ConfigError("difference_power: d must be >= 0");
    using V = std::decay_t<decltype(g(k))>;
    V acc{};
    for (long j = 0; j <= d; ++j) {
        const BigInt b = big_binomial(d, j);
        V scaled;
        if constexpr (std::is_same_v<V, BigInt>)
            scaled = V(g(k + j) * b);
        else if constexpr (std::is_same_v<V, BigRat>)
            scaled = V(g(k + j) * BigRat(b));
        else
            scaled = g(k + j) * to_real<double>(b);
        if (j % 2)
            acc -= scaled;
        else
            acc += scaled;
    }
    if (d % 2) acc = -acc;
    return acc;
}

// F(d, t, s) = sum_{j=s}^{d+1} (-1)^j C(j,s) C(d+1,j) j^{d-t}, exact.
inline BigInt script_F(int d, int t, int s) {
    if (t < 0 || t > d || s < 0 || s > d + 1) throw ConfigError("script_F: domain is 0<=t<=d, 0<=s<=d+1");
    BigInt acc = 0;
    for (long j = s; j <= d + 1; ++j) {
        BigInt term = big_binomial(j, s) * big_binomial(d + 1, j);
        BigInt p = 1;
        for (int e = 0; e < d - t; ++e) p *= j;
        term *= p;
        if (j % 2)
            acc -= term;
        else
            acc += term;
    }
    return acc;
}

// sum_{j=0}^{d} (-1)^j C(d,j) / (k+j)^l, computed in exact rationals and
// rounded once; the alternating cancellation is far below double resolution.
inline double binom_fraction_sum(int l, int d, long k) {
    if (l < 1 || d < 0 || k <= d) throw ConfigError("binom_fraction_sum: need l>=1, d>=0, k>d");
    BigRat acc = 0;
    for (long j = 0; j <= d; ++j) {
        BigInt den = 1;
        for (int e = 0; e < l; ++e) den *= (k + j);
        BigRat term = BigRat(big_binomial(d, j)) / BigRat(den);
        if (j % 2)
            acc -= term;
        else
            acc += term;
    }
    return to_real<double>(acc);
}

// Residual of the basic recurrence sum_j (-1)^j C(n+1,j) b_{k+j} w^{n+1-j}
// for b_k = w^k (a_0 + a_1 k + ... + a_n k^n); identically zero in exact
// arithmetic. Returns (residual, sum of term magnitudes) for relative checks.
inline std::pair<std::complex<double>, double> basic_recurrence_residual(
    const std::complex<double>& omega, const std::vector<double>& a_coeffs, int n, long k) {
    if (static_cast<int>(a_coeffs.size()) != n + 1)
        throw ConfigError("basic_recurrence_residual: need n+1 coefficients");
    auto b = [&](long kk) {
        double p = 0;
        for (int i = n; i >= 0; --i) p = p * double(kk) + a_coeffs[i];
        std::complex<double> w(1, 0);
        // omega^kk for kk >= 0
        std::complex<double> base = omega;
        long e = kk;
        while (e > 0) {
            if (e & 1) w *= base;
            base *= base;
            e >>= 1;
        }
        return w * p;
    };
    std::complex<double> acc(0);
    double scale = 0;
    for (long j = 0; j <= n + 1; ++j) {
        std::complex<double> wpow(1, 0);
        std::complex<double> base = omega;
        long e = n + 1 - j;
        while (e > 0) {
            if (e & 1) wpow *= base;
            base *= base;
            e >>= 1;
        }
        std::complex<double> term = to_real<double>(big_binomial(n + 1, j)) * b(k + j) * wpow;
        if (j % 2) term = -term;
        acc += term;
        scale += std::abs(term);
    }
    return {acc, scale};
}

}  // namespace pwf
