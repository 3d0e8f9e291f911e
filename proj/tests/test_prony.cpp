#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pwf/prony.hpp"
#include "pwf/sweep.hpp"

using namespace pwf;
using C = std::complex<double>;

namespace {

const AprioriBounds kBounds{1.0, 2.0, 1.0, 10.0};

// Exact order-zero data m_k = sum_j A_j omega_j^k as a window of c_k values.
FourierWindow<double> order0_window(const std::vector<double>& xis,
                                    const std::vector<double>& amps, long kmin, long kmax) {
    FourierWindow<double> w;
    w.first = kmin;
    w.values.resize(kmax - kmin + 1);
    for (long k = kmin; k <= kmax; ++k) {
        C mk(0);
        for (std::size_t j = 0; j < xis.size(); ++j)
            mk += amps[j] * std::polar(1.0, -double(k) * xis[j]);
        w.values[k - kmin] = mk / (two_pi<double>() * C(0, double(k)));
    }
    return w;
}

}  // namespace

TEST_CASE("K = 1 exact recovery") {
    const auto w = order0_window({0.8}, {1.5}, 20, 21);
    const auto p = make_prony_problem(w, 1, 20, kBounds);
    const auto est = prony_estimate(p);
    REQUIRE(est.xis.size() == 1);
    CHECK(est.xis[0] == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(hankel_condition(p) == doctest::Approx(1.0));
}

TEST_CASE("recurrence check on exact data") {
    // sum_i q_i m_{k+i} = 0 where Q(z) = prod (z - omega_j).
    const std::vector<double> xis{-1.1, 0.4, 2.0};
    const std::vector<double> amps{1.0, -1.4, 1.9};
    std::vector<C> q{{1.0, 0.0}};  // ascending coefficients of Q
    for (double xi : xis) {
        const C om = std::polar(1.0, -xi);
        std::vector<C> next(q.size() + 1, C(0));
        for (std::size_t i = 0; i < q.size(); ++i) {
            next[i + 1] += q[i];
            next[i] -= om * q[i];
        }
        q = std::move(next);
    }
    auto mk = [&](long k) {
        C v(0);
        for (std::size_t j = 0; j < xis.size(); ++j)
            v += amps[j] * std::polar(1.0, -double(k) * xis[j]);
        return v;
    };
    for (long k : {5L, 50L, 500L}) {
        C acc(0);
        double scale = 0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            acc += q[i] * mk(k + i);
            scale += std::abs(q[i] * mk(k + i));
        }
        CHECK(std::abs(acc) <= 1e-12 * scale);
    }
}

TEST_CASE("exact recovery for K <= 4 across M") {
    std::mt19937_64 rng(13);
    auto u = [&](double a, double b) { return a + (b - a) * double(rng() >> 11) * 0x1.0p-53; };
    for (int K = 1; K <= 4; ++K) {
        std::vector<double> xis, amps;
        for (int j = 0; j < K; ++j) {
            xis.push_back(-3.0 + 6.0 * (j + u(0.2, 0.8)) / K);
            amps.push_back(u(1.0, 2.0) * (u(0.0, 1.0) < 0.5 ? -1 : 1));
        }
        std::sort(xis.begin(), xis.end());
        for (long M : {10L, 100L, 1000L}) {
            const auto w = order0_window(xis, amps, M, M + 2 * K - 1);
            const auto est = prony_estimate(make_prony_problem(w, K, M, kBounds));
            REQUIRE(static_cast<int>(est.xis.size()) == K);
            for (int j = 0; j < K; ++j)
                CHECK(circ_dist(est.xis[j], xis[j]) <= 1e-8);
        }
    }
}

TEST_CASE("Hankel factorization H = V diag(A omega^k) V^T on exact data") {
    const std::vector<double> xis{-0.9, 1.4};
    const std::vector<double> amps{1.2, -1.8};
    const long M = 25;
    const auto w = order0_window(xis, amps, M, M + 3);
    const auto p = make_prony_problem(w, 2, M, kBounds);

    // (V diag(A_j omega_j^M) V^T)_{a,b} with V_{r,j} = omega_j^r.
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            C expect(0);
            for (int j = 0; j < 2; ++j)
                expect += std::polar(1.0, -double(a) * xis[j]) * amps[j] *
                          std::polar(1.0, -double(M) * xis[j]) *
                          std::polar(1.0, -double(b) * xis[j]);
            CHECK(std::abs(p.rk0[a + b] - expect) <= 1e-10 * std::abs(expect));
        }
    }
}

TEST_CASE("condition grows as nodes coalesce and the bound holds") {
    const long M = 30;
    auto kappa_at = [&](double sep) {
        const auto w = order0_window({0.0, sep}, {1.0, 1.0}, M, M + 3);
        return hankel_condition(make_prony_problem(w, 2, M, kBounds));
    };
    const double k1 = kappa_at(1.0), k2 = kappa_at(1e-1), k3 = kappa_at(1e-3);
    CHECK(k2 > k1);
    CHECK(k3 > 100 * k2);

    // kappa(H) <= (J2/J1) kappa(V), factor-of-two slack for norm inequivalence.
    const std::vector<double> xis{-2.0, 0.1, 2.2};
    const std::vector<double> amps{1.0, 2.0, -1.5};
    const auto w = order0_window(xis, amps, M, M + 5);
    const auto p = make_prony_problem(w, 3, M, kBounds);
    CMatrix<double> V(3, std::vector<C>(3));
    for (int r = 0; r < 3; ++r)
        for (int j = 0; j < 3; ++j) V[r][j] = std::polar(1.0, -double(r) * xis[j]);
    const double j_ratio = 2.0 / 1.0;
    CHECK(hankel_condition(p) <= 2.0 * j_ratio * cond1(V) * cond1(V));
}

TEST_CASE("ill-posed and rejection paths") {
    const long M = 30;
    // Nearly coincident nodes: numerically singular Hankel.
    const auto w = order0_window({0.0, 1e-9}, {1.0, -1.0}, M, M + 3);
    CHECK_THROWS_AS(prony_estimate(make_prony_problem(w, 2, M, kBounds)), IllPosedError);

    // Estimates closer than J3/3 are rejected with an accuracy error.
    AprioriBounds wide = kBounds;
    wide.J3 = 2.0;
    const auto w2 = order0_window({0.0, 0.3}, {1.5, 1.5}, M, M + 3);
    CHECK_THROWS_AS(prony_estimate(make_prony_problem(w2, 2, M, wide)), AccuracyError);

    PronyProblem bad;
    bad.K = 2;
    bad.M = 10;
    bad.rk0 = {{1, 0}, {1, 0}};  // wrong length
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("two synthesized jumps: error decays about like 1/M or better") {
    std::vector<double> ms{32, 64, 128, 256, 512, 1024};
    std::vector<double> errs;
    const auto f = synth_random_at({0.0, 3.0}, 6, 1030 + 4, 9, kBounds);
    for (double M : ms) {
        const long Mi = long(M);
        const auto w = make_window_serial<double>(f, Mi, Mi + 3);
        const auto est = prony_estimate(make_prony_problem(w, 2, Mi, kBounds));
        double worst = 0;
        for (double t : {0.0, 3.0}) {
            double best = 10;
            for (double e : est.xis) best = std::min(best, circ_dist(e, t));
            worst = std::max(worst, best);
        }
        errs.push_back(worst);
    }
    const auto fit = fit_loglog(ms, errs);
    CHECK(fit.slope <= -0.8);
}
