// Generalized Laguerre polynomials L_n^{(alpha)} and their roots.
#pragma once

#include <vector>

#include "pwf/errors.hpp"
#include "pwf/poly.hpp"
#include "pwf/rational.hpp"
#include "pwf/real.hpp"

namespace pwf {

// Coefficients of L_n^{(alpha)}(x) = sum_m C(n+alpha, n-m) (-x)^m / m!,
// ascending powers. Integer alpha uses exact rationals.
inline std::vector<double> laguerre_coeffs(double alpha, int n) {
    if (n < 0 || n > 20) throw UnsupportedError("laguerre: degree must be in [0, 20]");
    std::vector<double> c(n + 1);
    const long ai = static_cast<long>(alpha);
    const bool integral = (double(ai) == alpha);
    for (int m = 0; m <= n; ++m) {
        if (integral) {
            // C(n+ai, n-m) with integer upper argument.
            BigRat v = BigRat(big_binomial(n + ai, n - m)) / BigRat(big_factorial(m));
            if (m % 2) v = -v;
            c[m] = to_real<double>(v);
        } else {
            // C(n+alpha, n-m) = prod_{i=1}^{n-m} (alpha+m+i) / (n-m)!
            double v = 1.0;
            for (int i = 1; i <= n - m; ++i) v *= (alpha + m + i) / double(i);
            double fact = 1.0;
            for (int i = 2; i <= m; ++i) fact *= i;
            c[m] = (m % 2 ? -1.0 : 1.0) * v / fact;
        }
    }
    return c;
}

inline double laguerre_eval(double alpha, int n, double x) {
    const auto c = laguerre_coeffs(alpha, n);
    double v = 0.0;
    for (int k = n; k >= 0; --k) v = v * x + c[k];
    return v;
}

// The n simple positive roots of L_n^{(alpha)}, ascending. Uses the shared
// complex root finder; imaginary parts are checked and discarded.
inline std::vector<double> laguerre_roots(int n, double alpha = 1.0) {
    if (n < 1 || n > 15) throw UnsupportedError("laguerre_roots: n must be in [1, 15]");
    const auto c = laguerre_coeffs(alpha, n);
    ComplexPolynomial<double> p;
    p.coeffs.assign(c.begin(), c.end());
    const auto rs = roots(p);
    std::vector<double> out;
    out.reserve(n);
    for (const auto& z : rs.roots) {
        if (std::abs(z.imag()) >= 1e-10)
            throw NumericError("laguerre_roots: complex root where real expected");
        out.push_back(z.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace pwf
