// Exact integer/rational arithmetic used for coefficient tables and the
// structured Vandermonde inverse. Values cross into floating point exactly
// once, at the end.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "pwf/errors.hpp"
#include "pwf/real.hpp"

namespace pwf {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline BigInt big_factorial(long n) {
    BigInt r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

// Exact conversion through the decimal string (correctly rounded by strtod/strtoflt128).
template <class R>
inline R to_real(const BigInt& x) {
    return RealTraits<R>::from_string(x.str().c_str());
}

template <class R>
inline R to_real(const BigRat& x) {
    return to_real<R>(boost::multiprecision::numerator(x)) /
           to_real<R>(boost::multiprecision::denominator(x));
}

// Exact Gauss-Jordan inverse of a small rational matrix.
inline std::vector<std::vector<BigRat>> exact_inverse(std::vector<std::vector<BigRat>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<BigRat>> inv(n, std::vector<BigRat>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw NumericError("exact_inverse: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const BigRat p = a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const BigRat f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

}  // namespace pwf
