// Single-jump resolution to order d from d+2 consecutive weighted Fourier
// coefficients: eliminant rooting for the location, then the structured
// Vandermonde solve V_k^{-1} = S_{k,d} V_0^{-1} for the magnitudes.
#pragma once

#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include "pwf/errors.hpp"
#include "pwf/laguerre.hpp"
#include "pwf/model.hpp"
#include "pwf/poly.hpp"
#include "pwf/rational.hpp"
#include "pwf/real.hpp"

namespace pwf {

template <class R = double>
struct RkSequence {
    int d = 0;
    long start = 0;
    std::vector<std::complex<R>> values;  // r_k, k = start .. start+d+1
};

template <class R = double>
struct JumpEstimate {
    std::complex<R> omega{1, 0};
    R xi = R(0);                   // -arg(omega), canonical in [-pi, pi)
    std::vector<R> magnitudes;     // real parts of the solved A_l
    struct Diagnostics {
        RootSet<R> root_set;
        std::vector<std::complex<R>> predicted_spurious;
        std::vector<std::complex<R>> magnitudes_c;  // complex solve result
        R magnitude_residual = R(0);                // max |Im A_l|
        bool modulus_clamped = false;               // |omega| clamped in the power factor
    } diagnostics;
};

// r_k = 2 pi (ik)^{d+1} c_k(f).
template <class R = double>
std::complex<R> rk(const FourierWindow<R>& window, int d, long k) {
    if (k < 1) throw ConfigError("rk: k must be >= 1");
    const std::complex<R> c = window.at(k);
    return two_pi<R>() * ipow<R>(d + 1) * powi(R(static_cast<double>(k)), d + 1) * c;
}

template <class R = double>
RkSequence<R> rk_sequence(const FourierWindow<R>& window, int d, long M) {
    RkSequence<R> s;
    s.d = d;
    s.start = M;
    s.values.reserve(d + 2);
    for (long j = 0; j <= d + 1; ++j) s.values.push_back(rk(window, d, M + j));
    return s;
}

// q_M^d(z) = sum_j (-1)^j C(d+1,j) r_{M+j} z^{d+1-j}, degree d+1.
template <class R = double>
ComplexPolynomial<R> eliminant(const FourierWindow<R>& window, int d, long M) {
    if (!window.covers(M, M + d + 1)) throw RangeError("eliminant: window must cover M..M+d+1");
    ComplexPolynomial<R> q;
    q.coeffs.resize(d + 2);
    for (long j = 0; j <= d + 1; ++j) {
        const R b = to_real<R>(big_binomial(d + 1, j));
        const R sign = (j % 2) ? R(-1) : R(1);
        q.coeffs[d + 1 - j] = sign * b * rk(window, d, M + j);
    }
    // A vanishing leading coefficient r_M leaves the root structure undefined.
    R cmax(0);
    for (const auto& c : q.coeffs) cmax = std::max(cmax, cabs(c));
    if (cabs(q.coeffs[d + 1]) < cmax * R(64) * RealTraits<R>::eps())
        throw ConditioningError("eliminant: leading coefficient r_M is numerically zero");
    return q;
}

// Predicted off-circle roots y_i = omega / (1 - phi_i / M), phi_i the roots
// of L_d^{(1)}; diagnostics only. Empty for d = 0.
template <class R = double>
std::vector<std::complex<R>> predicted_spurious(const std::complex<R>& omega, int d, long M) {
    if (M < 1) throw ConfigError("predicted_spurious: M must be >= 1");
    std::vector<std::complex<R>> out;
    if (d == 0) return out;
    const auto phi = laguerre_roots(d, 1.0);
    out.reserve(d);
    for (double p : phi) out.push_back(omega / (R(1) - R(p) / R(static_cast<double>(M))));
    return out;
}

// Root of the eliminant closest to the unit circle, with full diagnostics.
template <class R = double>
JumpEstimate<R> locate_jump(const FourierWindow<R>& window, int d, long M) {
    if (M < 1) throw ConfigError("locate_jump: M must be >= 1");
    const auto q = eliminant(window, d, M);
    JumpEstimate<R> est;
    est.diagnostics.root_set = roots(q);
    est.omega = closest_to_unit_circle(est.diagnostics.root_set);
    est.xi = canonical_angle(-carg(est.omega));
    est.diagnostics.predicted_spurious = predicted_spurious(est.omega, d, M);
    return est;
}

// S_{k,d}: (S)_{m,n} = (-k)^{n-m} C(n-1, n-m), 1-based upper triangular.
struct ShiftMatrix {
    int d = 0;
    long k = 0;

    template <class R = double>
    R entry(int m, int n) const {  // 1-based indices
        if (m < 1 || n < 1 || m > d + 1 || n > d + 1) throw RangeError("ShiftMatrix: index");
        if (n < m) return R(0);
        const R sign = ((n - m) % 2) ? R(-1) : R(1);
        return sign * powi(R(static_cast<double>(k)), n - m) * to_real<R>(big_binomial(n - 1, n - m));
    }

    // Matrix-vector product from the closed-form entries.
    template <class R = double>
    std::vector<std::complex<R>> apply(const std::vector<std::complex<R>>& v) const {
        if (static_cast<int>(v.size()) != d + 1) throw ConfigError("ShiftMatrix: dimension mismatch");
        std::vector<std::complex<R>> out(d + 1);
        for (int m = 1; m <= d + 1; ++m) {
            std::complex<R> s(0);
            for (int n = m; n <= d + 1; ++n) s += entry<R>(m, n) * v[n - 1];
            out[m - 1] = s;
        }
        return out;
    }
};

namespace detail {
// V_0^{-1} on nodes 0..d, computed exactly once per (d, scalar type).
inline const std::vector<std::vector<BigRat>>& v0_inverse_exact(int d) {
    static std::map<int, std::vector<std::vector<BigRat>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it == cache.end()) {
        std::vector<std::vector<BigRat>> v0(d + 1, std::vector<BigRat>(d + 1));
        for (int t = 0; t <= d; ++t) {
            BigRat p = 1;
            for (int n = 0; n <= d; ++n) {
                v0[t][n] = p;
                p *= t;
            }
        }
        it = cache.emplace(d, exact_inverse(std::move(v0))).first;
    }
    return it->second;
}

template <class R>
const std::vector<std::vector<R>>& v0_inverse(int d) {
    static std::map<int, std::vector<std::vector<R>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(d);
    if (it == cache.end()) {
        const auto& exact = v0_inverse_exact(d);
        std::vector<std::vector<R>> m(d + 1, std::vector<R>(d + 1));
        for (int i = 0; i <= d; ++i)
            for (int j = 0; j <= d; ++j) m[i][j] = to_real<R>(exact[i][j]);
        it = cache.emplace(d, std::move(m)).first;
    }
    return it->second;
}
}  // namespace detail

// Solves V_M B = (r_{M+j} omega^{-M-j})_j through B = S_{M,d} (V_0^{-1} rhs)
// and converts B_l = i^l A_{d-l} back. Real parts are returned; the complex
// solution and its imaginary residue stay in the diagnostics.
template <class R = double>
void solve_magnitudes(const FourierWindow<R>& window, int d, long M, JumpEstimate<R>& est) {
    using C = std::complex<R>;
    if (!window.covers(M, M + d)) throw RangeError("solve_magnitudes: window must cover M..M+d");
    const R rho = cabs(est.omega);
    if (rho < R(0.5) || rho > R(2))
        throw ConditioningError("solve_magnitudes: |omega| outside [0.5, 2]");

    // omega^{-M-j} = e^{+i (M+j) xi} rho^{-(M+j)}; the analysis guarantees
    // omega near the circle, so the modulus factor is clamped to 1 +- 10/M.
    R rho_eff = rho;
    const R lim = R(10) / R(static_cast<double>(M));
    if (RealTraits<R>::abs(rho - R(1)) > lim) {
        est.diagnostics.modulus_clamped = true;
        rho_eff = rho > R(1) ? R(1) + lim : R(1) - lim;
    }
    const R log_rho = RealTraits<R>::log(rho_eff);

    std::vector<C> rhs(d + 1);
    for (long j = 0; j <= d; ++j) {
        const R mj = R(static_cast<double>(M + j));
        const C power = RealTraits<R>::exp(-mj * log_rho) * cis<R>(mj * est.xi);
        rhs[j] = rk(window, d, M + j) * power;
    }

    const auto& v0inv = detail::v0_inverse<R>(d);
    std::vector<C> u(d + 1, C(0));
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= d; ++j) u[i] += v0inv[i][j] * rhs[j];

    const ShiftMatrix S{d, M};
    const auto B = S.template apply<R>(u);

    est.magnitudes.resize(d + 1);
    est.diagnostics.magnitudes_c.resize(d + 1);
    R residue(0);
    for (int l = 0; l <= d; ++l) {
        const C a = B[d - l] / ipow<R>(d - l);
        est.diagnostics.magnitudes_c[l] = a;
        est.magnitudes[l] = a.real();
        residue = std::max(residue, RealTraits<R>::abs(a.imag()));
    }
    est.diagnostics.magnitude_residual = residue;
}

// Location plus magnitudes in one call.
template <class R = double>
JumpEstimate<R> resolve_jump(const FourierWindow<R>& window, int d, long M) {
    auto est = locate_jump(window, d, M);
    solve_magnitudes(window, d, M, est);
    return est;
}

}  // namespace pwf
