// Bernoulli polynomials B_n(x), n <= 30. Coefficients are generated once by
// the exact rational recurrence and cached per scalar type; evaluation is a
// Horner pass in floating point.
#pragma once

#include <mutex>
#include <vector>

#include "pwf/errors.hpp"
#include "pwf/rational.hpp"
#include "pwf/real.hpp"

namespace pwf {

inline constexpr int kMaxBernoulliDegree = 30;

namespace detail {

// Bernoulli numbers b_0..b_n (b_1 = -1/2 convention) via
// sum_{j=0}^{m} C(m+1, j) b_j = 0.
inline const std::vector<BigRat>& bernoulli_numbers() {
    static const std::vector<BigRat> table = [] {
        std::vector<BigRat> b(kMaxBernoulliDegree + 2);
        b[0] = 1;
        for (int m = 1; m < static_cast<int>(b.size()); ++m) {
            BigRat s = 0;
            for (int j = 0; j < m; ++j) s += BigRat(big_binomial(m + 1, j)) * b[j];
            b[m] = -s / BigRat(m + 1);
        }
        return b;
    }();
    return table;
}

// Coefficients of B_n(x) in ascending powers: B_n(x) = sum_k C(n,k) b_{n-k} x^k.
inline const std::vector<std::vector<BigRat>>& bernoulli_poly_coeffs() {
    static const std::vector<std::vector<BigRat>> table = [] {
        const auto& b = bernoulli_numbers();
        std::vector<std::vector<BigRat>> c(kMaxBernoulliDegree + 1);
        for (int n = 0; n <= kMaxBernoulliDegree; ++n) {
            c[n].resize(n + 1);
            for (int k = 0; k <= n; ++k) c[n][k] = BigRat(big_binomial(n, k)) * b[n - k];
        }
        return c;
    }();
    return table;
}

template <class R>
const std::vector<std::vector<R>>& bernoulli_coeffs_as() {
    static const std::vector<std::vector<R>> table = [] {
        const auto& src = bernoulli_poly_coeffs();
        std::vector<std::vector<R>> out(src.size());
        for (std::size_t n = 0; n < src.size(); ++n) {
            out[n].reserve(src[n].size());
            for (const auto& q : src[n]) out[n].push_back(to_real<R>(q));
        }
        return out;
    }();
    return table;
}

}  // namespace detail

// Value of the n-th Bernoulli polynomial at x.
template <class R = double>
R bernoulli(int n, R x) {
    if (n < 0 || n > kMaxBernoulliDegree)
        throw UnsupportedError("bernoulli: degree must be in [0, 30]");
    const auto& c = detail::bernoulli_coeffs_as<R>()[n];
    R v(0);
    for (int k = n; k >= 0; --k) v = v * x + c[k];
    return v;
}

// Exact rational value B_n(0) = b_n, exposed for tests.
inline BigRat bernoulli_number(int n) {
    if (n < 0 || n > kMaxBernoulliDegree + 1)
        throw UnsupportedError("bernoulli_number: degree must be in [0, 31]");
    return detail::bernoulli_numbers()[n];
}

}  // namespace pwf
