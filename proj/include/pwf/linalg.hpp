// Small dense complex linear algebra (partial-pivot LU) for the Prony stage
// and test oracles. Sizes here never exceed ~20.
#pragma once

#include <complex>
#include <vector>

#include "pwf/errors.hpp"
#include "pwf/real.hpp"

namespace pwf {

template <class R = double>
using CMatrix = std::vector<std::vector<std::complex<R>>>;

// Solves A x = b by Gaussian elimination with partial pivoting.
template <class R = double>
std::vector<std::complex<R>> lu_solve(CMatrix<R> a, std::vector<std::complex<R>> b) {
    const std::size_t n = a.size();
    if (n == 0 || b.size() != n) throw ConfigError("lu_solve: dimension mismatch");
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        R best = cabs(a[col][col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const R v = cabs(a[r][col]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == R(0)) throw NumericError("lu_solve: singular matrix");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const std::complex<R> f = a[r][col] / a[col][col];
            if (f == std::complex<R>(0)) continue;
            for (std::size_t j = col; j < n; ++j) a[r][j] -= f * a[col][j];
            b[r] -= f * b[col];
        }
    }
    std::vector<std::complex<R>> x(n);
    for (std::size_t i = n; i-- > 0;) {
        std::complex<R> s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

template <class R = double>
CMatrix<R> mat_inverse(const CMatrix<R>& a) {
    const std::size_t n = a.size();
    CMatrix<R> inv(n, std::vector<std::complex<R>>(n));
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<std::complex<R>> e(n, std::complex<R>(0));
        e[col] = std::complex<R>(1);
        auto x = lu_solve(a, e);
        for (std::size_t r = 0; r < n; ++r) inv[r][col] = x[r];
    }
    return inv;
}

template <class R = double>
R mat_norm1(const CMatrix<R>& a) {
    const std::size_t n = a.size();
    R best(0);
    for (std::size_t j = 0; j < n; ++j) {
        R s(0);
        for (std::size_t i = 0; i < n; ++i) s += cabs(a[i][j]);
        best = std::max(best, s);
    }
    return best;
}

// 1-norm condition number via the explicit inverse (fine at these sizes).
template <class R = double>
R cond1(const CMatrix<R>& a) {
    return mat_norm1(a) * mat_norm1(mat_inverse(a));
}

}  // namespace pwf
