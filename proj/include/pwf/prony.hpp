// Order-zero jump pre-localization: the K x K Hankel system of weighted
// coefficients, the monic node polynomial, and its roots.
#pragma once

#include <complex>
#include <vector>

#include "pwf/errors.hpp"
#include "pwf/linalg.hpp"
#include "pwf/model.hpp"
#include "pwf/poly.hpp"

namespace pwf {

struct PronyProblem {
    int K = 1;
    long M = 1;
    std::vector<std::complex<double>> rk0;  // r_k = 2 pi i k c_k(f), k = M .. M+2K-1
    AprioriBounds bounds;

    void validate() const {
        if (K < 1) throw ConfigError("PronyProblem: K must be >= 1");
        if (M < 1) throw ConfigError("PronyProblem: M must be >= 1");
        if (static_cast<long>(rk0.size()) != 2L * K)
            throw ConfigError("PronyProblem: need exactly 2K values");
    }
};

struct PronyEstimate {
    std::vector<double> xis;                  // ascending
    std::vector<std::complex<double>> omegas; // sorted consistently with xis
    double condition = 1.0;                   // 1-norm condition of the Hankel system
};

inline PronyProblem make_prony_problem(const FourierWindow<double>& window, int K, long M,
                                       const AprioriBounds& bounds) {
    PronyProblem p;
    p.K = K;
    p.M = M;
    p.bounds = bounds;
    p.rk0.reserve(2 * K);
    for (long k = M; k <= M + 2 * K - 1; ++k)
        p.rk0.push_back(two_pi<double>() * std::complex<double>(0, double(k)) * window.at(k));
    return p;
}

namespace detail {
inline CMatrix<double> hankel_of(const PronyProblem& p) {
    CMatrix<double> h(p.K, std::vector<std::complex<double>>(p.K));
    for (int a = 0; a < p.K; ++a)
        for (int b = 0; b < p.K; ++b) h[a][b] = p.rk0[a + b];
    return h;
}
}  // namespace detail

// 1-norm condition estimate of the Hankel matrix.
inline double hankel_condition(const PronyProblem& p) {
    p.validate();
    return cond1(detail::hankel_of(p));
}

// Solves the Hankel system, roots the monic node polynomial and returns the
// sorted location estimates. Estimates are only accepted when the pairwise
// circular separation is at least J3/3; otherwise the caller should raise M.
inline PronyEstimate prony_estimate(const PronyProblem& p) {
    p.validate();
    const auto H = detail::hankel_of(p);
    const double kappa = cond1(H);
    if (kappa > 1e12)
        throw IllPosedError("prony_estimate: Hankel system numerically singular", kappa);

    std::vector<std::complex<double>> rhs(p.K);
    for (int a = 0; a < p.K; ++a) rhs[a] = -p.rk0[p.K + a];
    const auto q = lu_solve(H, rhs);

    ComplexPolynomial<double> Q;
    Q.coeffs.assign(q.begin(), q.end());
    Q.coeffs.push_back({1.0, 0.0});
    const auto rs = roots(Q);
    if (static_cast<int>(rs.roots.size()) != p.K)
        throw NumericError("prony_estimate: unexpected root count");

    PronyEstimate est;
    est.condition = kappa;
    std::vector<std::pair<double, std::complex<double>>> pairs;
    for (const auto& w : rs.roots) {
        const double mod = std::abs(w);
        if (mod < 0.5 || mod > 2.0)
            throw AccuracyError("prony_estimate: node modulus outside [0.5, 2]; raise M");
        // The paper takes arg directly; no projection onto the circle.
        pairs.emplace_back(canonical_angle(-std::arg(w)), w);
    }
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& pr : pairs) {
        est.xis.push_back(pr.first);
        est.omegas.push_back(pr.second);
    }
    for (std::size_t a = 0; a < est.xis.size(); ++a)
        for (std::size_t b = a + 1; b < est.xis.size(); ++b)
            if (circ_dist(est.xis[a], est.xis[b]) < p.bounds.J3 / 3.0)
                throw AccuracyError("prony_estimate: estimates closer than J3/3; raise M");
    return est;
}

}  // namespace pwf
