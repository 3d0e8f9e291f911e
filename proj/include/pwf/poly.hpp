// Dense complex polynomials and the Aberth-Ehrlich simultaneous root finder.
#pragma once

#include <algorithm>
#include <complex>
#include <numeric>
#include <vector>

#include "pwf/errors.hpp"
#include "pwf/real.hpp"

namespace pwf {

template <class R = double>
struct ComplexPolynomial {
    using C = std::complex<R>;
    std::vector<C> coeffs;  // ascending powers

    ComplexPolynomial() = default;
    explicit ComplexPolynomial(std::vector<C> c) : coeffs(std::move(c)) { normalize(); }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    // Drops exactly-zero leading coefficients.
    void normalize() {
        while (coeffs.size() > 1 && coeffs.back() == C(0)) coeffs.pop_back();
    }

    C eval(const C& z) const {
        C v(0);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * z + *it;
        return v;
    }

    C deriv_eval(const C& z) const {
        C v(0);
        for (int k = degree(); k >= 1; --k) v = v * z + coeffs[k] * R(k);
        return v;
    }

    R max_coeff_abs() const {
        R m(0);
        for (const auto& c : coeffs) m = std::max(m, cabs(c));
        return m;
    }
};

template <class R = double>
struct RootSet {
    using C = std::complex<R>;
    std::vector<C> roots;
    std::vector<R> residuals;  // |p(root_i)| on the max-normalized polynomial
    std::vector<R> dp_mag;     // |p'(root_i)|, used for tie-breaking
};

// Thrown when the iteration stalls; carries the best iterate for diagnosis.
template <class R = double>
struct RootConvergenceError : NumericError {
    RootConvergenceError(const std::string& what, RootSet<R> best_)
        : NumericError(what), best(std::move(best_)) {}
    RootSet<R> best;
};

template <class R>
inline R default_root_tol(int degree) {
    // 1e-13 * degree at double precision, scaled with the working epsilon.
    return R(degree) * R(1e-13) * (RealTraits<R>::eps() / R(2.220446049250313e-16));
}

// All roots of p by Aberth-Ehrlich simultaneous iteration, Newton-polished.
// The returned multiset is complete with multiplicity (count == degree).
template <class R = double>
RootSet<R> roots(const ComplexPolynomial<R>& p_in, R tol = R(-1), int max_iters = 200) {
    using C = std::complex<R>;
    ComplexPolynomial<R> p = p_in;
    p.normalize();
    const int n_total = p.degree();
    if (n_total < 1) throw ConfigError("roots: degree must be >= 1");
    for (const auto& c : p.coeffs) {
        const double re = RealTraits<R>::to_double(c.real());
        const double im = RealTraits<R>::to_double(c.imag());
        if (!std::isfinite(re) || !std::isfinite(im))
            throw ConfigError("roots: coefficients must be finite");
    }
    if (tol < R(0)) tol = default_root_tol<R>(n_total);

    // Scale invariance: work with max-normalized coefficients.
    const R scale = p.max_coeff_abs();
    if (scale == R(0)) throw ConfigError("roots: zero polynomial");
    for (auto& c : p.coeffs) c /= scale;

    RootSet<R> out;

    // Deflate exact zero roots at the origin.
    std::size_t nz = 0;
    while (nz < p.coeffs.size() - 1 && p.coeffs[nz] == C(0)) ++nz;
    for (std::size_t i = 0; i < nz; ++i) {
        out.roots.push_back(C(0));
        out.residuals.push_back(R(0));
    }
    if (nz > 0) p.coeffs.erase(p.coeffs.begin(), p.coeffs.begin() + nz);

    const int n = p.degree();
    if (n >= 1) {
        // Initial iterates on a circle of radius (|a_0/a_n|)^{1/n},
        // golden-angle spacing to avoid symmetric stagnation.
        const R ratio = cabs(p.coeffs.front()) / cabs(p.coeffs.back());
        R radius = RealTraits<R>::pow(ratio, R(1) / R(n));
        if (!(radius > R(0)) || !std::isfinite(RealTraits<R>::to_double(radius))) radius = R(1);
        const R golden = RealTraits<R>::from_string("2.399963229728653322231555506633613853");
        std::vector<C> z(n);
        for (int i = 0; i < n; ++i) z[i] = radius * cis<R>(R(0.4) + golden * R(i));

        const R tiny = RealTraits<R>::eps() * RealTraits<R>::eps();
        bool converged = false;
        for (int iter = 0; iter < max_iters && !converged; ++iter) {
            converged = true;
            for (int i = 0; i < n; ++i) {
                const C pv = p.eval(z[i]);
                if (cabs(pv) <= tiny) continue;
                C dv = p.deriv_eval(z[i]);
                if (dv == C(0)) dv = C(RealTraits<R>::eps());
                const C w = pv / dv;
                C sum(0);
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    C diff = z[i] - z[j];
                    if (diff == C(0)) diff = C(RealTraits<R>::eps());
                    sum += C(1) / diff;
                }
                C denom = C(1) - w * sum;
                if (denom == C(0)) denom = C(RealTraits<R>::eps());
                const C step = w / denom;
                z[i] -= step;
                if (cabs(step) > R(4) * RealTraits<R>::eps() * (R(1) + cabs(z[i])))
                    converged = false;
            }
        }

        // Newton polish.
        for (int i = 0; i < n; ++i) {
            for (int k = 0; k < 3; ++k) {
                const C pv = p.eval(z[i]);
                const C dv = p.deriv_eval(z[i]);
                if (dv == C(0)) break;
                const C step = pv / dv;
                if (cabs(step) > R(0.5) * (R(1) + cabs(z[i]))) break;  // reject wild steps
                z[i] -= step;
            }
        }

        RootSet<R> found;
        R worst(0);
        for (int i = 0; i < n; ++i) {
            found.roots.push_back(z[i]);
            const R res = cabs(p.eval(z[i]));
            found.residuals.push_back(res);
            worst = std::max(worst, res);
        }
        if (!converged && worst > tol * R(n_total)) {
            for (auto& zz : found.roots) found.dp_mag.push_back(cabs(p.deriv_eval(zz)));
            throw RootConvergenceError<R>("roots: no convergence after max iterations",
                                          std::move(found));
        }
        for (std::size_t i = 0; i < found.roots.size(); ++i) {
            out.roots.push_back(found.roots[i]);
            out.residuals.push_back(found.residuals[i]);
        }
    }

    for (const auto& z : out.roots) out.dp_mag.push_back(cabs(p_in.deriv_eval(z)) / scale);
    return out;
}

// The root whose modulus is nearest 1. Ties (within a few ulp) go to the root
// with larger |p'| (better conditioned), then to the smallest index.
template <class R = double>
std::complex<R> closest_to_unit_circle(const RootSet<R>& rs) {
    if (rs.roots.empty()) throw ConfigError("closest_to_unit_circle: empty root set");
    std::size_t best = 0;
    R best_key = RealTraits<R>::abs(cabs(rs.roots[0]) - R(1));
    for (std::size_t i = 1; i < rs.roots.size(); ++i) {
        const R key = RealTraits<R>::abs(cabs(rs.roots[i]) - R(1));
        const R tie = R(16) * RealTraits<R>::eps() * (R(1) + std::min(key, best_key));
        if (key < best_key - tie) {
            best = i;
            best_key = key;
        } else if (RealTraits<R>::abs(key - best_key) <= tie && !rs.dp_mag.empty() &&
                   rs.dp_mag[i] > rs.dp_mag[best]) {
            best = i;
            best_key = key;
        }
    }
    return rs.roots[best];
}

}  // namespace pwf
