#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pwf/pipeline.hpp"
#include "pwf/sweep.hpp"

using namespace pwf;

namespace {

AprioriBounds wide_bounds() {
    AprioriBounds b;
    b.J1 = 1.0;
    b.J2 = 2.0;
    b.J3 = 3.0;
    b.T = 10.0;
    return b;
}

}  // namespace

TEST_CASE("config validation") {
    ReconstructionConfig cfg;
    cfg.K = 1;
    cfg.d1 = 6;
    cfg.M = 64;
    CHECK(cfg.effective_d() == 2);  // floor(d1/2) - 1 default
    CHECK_NOTHROW(cfg.validate());
    cfg.d = 3;  // 2d+1 = 7 > 6
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.d = 2;
    cfg.M = 8;  // < 4(d+2)
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("pure piecewise polynomial input reproduces itself") {
    // Phi_d with d = 2; declared smoothness d1 = 2d+1 (the pieces are
    // polynomials, hence C^inf between jumps).
    const int d = 2;
    TestFunction f;
    f.singular.d1 = 2 * d + 1;
    f.singular.jumps.push_back({0.4, {1.6, -0.8, 0.5, 0.0, 0.0, 0.0}});
    f.smooth.d1 = 2 * d + 1;

    ReconstructionConfig cfg;
    cfg.K = 1;
    cfg.d = d;
    cfg.d1 = 2 * d + 1;
    cfg.M = 128;
    cfg.bounds = wide_bounds();

    const long kmax = 2 * cfg.M + d + 1;
    const auto w = make_window<double>(f, -kmax, kmax);
    const auto res = reconstruct(w, cfg);
    REQUIRE(res.jumps.size() == 1);
    CHECK(circ_dist(res.jumps[0].xi, 0.4) <= 1e-8);

    const auto rep = error_report(res, f, 0.1, 512);
    CHECK(rep.sup_err <= 1e-7);
}

TEST_CASE("oracle path: errors at machine scale") {
    const auto f = synth_random(2, 6, 300, 17, AprioriBounds{1.0, 2.0, 2.0, 10.0});
    ReconstructionConfig cfg;
    cfg.K = 2;
    cfg.d1 = 6;
    cfg.M = 128;
    cfg.bounds = AprioriBounds{1.0, 2.0, 2.0, 10.0};
    const long kmax = 2 * cfg.M + cfg.effective_d() + 1;
    const auto w = make_window<double>(f, -kmax, kmax);
    const auto res = reconstruct_oracle(w, f, cfg);
    const auto rep = error_report(res, f, 0.2, 512);
    for (double e : rep.xi_err) CHECK(e <= 1e-12);
    for (const auto& row : rep.mag_err)
        for (double e : row) CHECK(e <= 1e-12);
    CHECK(rep.sup_err <= 1e-9);
}

TEST_CASE("consistency: smooth plus singular coefficients return c_k(f)") {
    const auto f = synth_random(1, 6, 300, 29, wide_bounds());
    ReconstructionConfig cfg;
    cfg.K = 1;
    cfg.d1 = 6;
    cfg.M = 96;
    cfg.bounds = wide_bounds();
    const int d = cfg.effective_d();
    const long kmax = 2 * cfg.M + d + 1;
    const auto w = make_window<double>(f, -kmax, kmax);
    const auto res = reconstruct(w, cfg);

    SingularPart est;
    est.d1 = d;
    for (const auto& j : res.jumps) est.jumps.push_back({j.xi, j.magnitudes});
    for (long k = -cfg.M; k <= cfg.M; ++k) {
        const auto total = res.smooth_coeffs.at(k) + singular_fourier<double>(est, d, k);
        const auto orig = w.at(k);
        CHECK(std::abs(total - orig) <= 4 * RealTraits<double>::eps() * (1.0 + std::abs(orig)));
    }
    CHECK_NOTHROW(res.smooth_coeffs.validate());  // conjugate symmetry
}

TEST_CASE("residual smoothness") {
    // With oracle-exact jump parameters the corrected series is the true
    // smooth part and regains its full decay.
    const auto f = synth_random(1, 6, 300, 37, wide_bounds());
    ReconstructionConfig cfg;
    cfg.K = 1;
    cfg.d1 = 6;
    cfg.M = 128;
    cfg.bounds = wide_bounds();
    const int d = cfg.effective_d();
    const long kmax = 2 * cfg.M + d + 1;
    const auto w = make_window<double>(f, -kmax, kmax);

    const auto oracle = reconstruct_oracle(w, f, cfg);
    std::vector<double> ks, vs;
    for (long k = cfg.M / 4; k <= cfg.M; k += 4) {
        ks.push_back(double(k));
        vs.push_back(std::abs(oracle.smooth_coeffs.at(k)) + 1e-300);
    }
    const auto fit = fit_loglog(ks, vs, 0.0);
    CHECK(fit.slope <= -(d + 1.5));

    // With estimated parameters the corrected coefficients drop far below the
    // raw ones at the window edge (the 1/k singular content is removed).
    const auto res = reconstruct(w, cfg);
    CHECK(std::abs(res.smooth_coeffs.at(cfg.M)) <= 1e-2 * std::abs(w.at(cfg.M)));
}

TEST_CASE("eval_reconstruction basics") {
    // Zero-jump result: plain truncated Fourier sum.
    TestFunction f;
    f.smooth.d1 = 4;
    f.smooth.f0 = 0.7;
    f.smooth.coeffs = {{0.1, -0.05}, {0.01, 0.02}};
    f.smooth.R = 1.0;

    ReconstructionResult res;
    res.config.K = 1;
    res.config.d1 = 4;
    res.config.M = 2;
    res.smooth_coeffs.first = -2;
    res.smooth_coeffs.values = {std::conj(f.smooth.coeffs[1]), std::conj(f.smooth.coeffs[0]),
                                {0.7, 0.0}, f.smooth.coeffs[0], f.smooth.coeffs[1]};
    for (double x : {-2.0, 0.3, 1.9}) {
        double expect = 0.7;
        for (long k = 1; k <= 2; ++k)
            expect += 2.0 * (f.smooth.at(k) * cis(double(k) * x)).real();
        CHECK(eval_reconstruction(res, x) == doctest::Approx(expect).epsilon(1e-14));
    }

    // Linearity in the smooth coefficients.
    auto res2 = res;
    for (auto& c : res2.smooth_coeffs.values) c *= 3.0;
    for (double x : {-1.0, 0.9}) {
        const double a = eval_reconstruction(res, x);
        const double b = eval_reconstruction(res2, x);
        CHECK(b == doctest::Approx(3.0 * a).epsilon(1e-12));
    }
}

TEST_CASE("error_report guards") {
    const auto f = synth_random(2, 6, 64, 41, AprioriBounds{1.0, 2.0, 2.0, 10.0});
    ReconstructionConfig cfg;
    cfg.K = 2;
    cfg.d1 = 6;
    cfg.M = 64;
    const long kmax = 2 * cfg.M + cfg.effective_d() + 1;
    const auto w = make_window<double>(f, -kmax, kmax);
    auto res = reconstruct_oracle(w, f, cfg);

    CHECK_THROWS_AS(error_report(res, f, 0.1, 100), ConfigError);  // grid too small

    auto missing = res;
    missing.jumps.pop_back();
    CHECK_THROWS_AS(error_report(missing, f, 0.1, 512), MatchingError);

    auto garbled = res;
    garbled.jumps[0].xi += 1.3;  // far beyond J3/4
    CHECK_THROWS_AS(error_report(garbled, f, 0.1, 512), MatchingError);

    // Determinism.
    const auto a = error_report(res, f, 0.2, 512);
    const auto b = error_report(res, f, 0.2, 512);
    CHECK(a.sup_err == b.sup_err);
    CHECK(a.xi_err == b.xi_err);
}

TEST_CASE("shrinking the exclusion radius cannot reduce the sup error") {
    const auto f = synth_random(1, 6, 200, 43, wide_bounds());
    ReconstructionConfig cfg;
    cfg.K = 1;
    cfg.d1 = 6;
    cfg.M = 64;
    cfg.bounds = wide_bounds();
    const long kmax = 2 * cfg.M + cfg.effective_d() + 1;
    const auto w = make_window<double>(f, -kmax, kmax);
    const auto res = reconstruct(w, cfg);
    const double wide = error_report(res, f, 0.4, 1024).sup_err;
    const double narrow = error_report(res, f, 0.05, 1024).sup_err;
    CHECK(narrow >= wide);
}

TEST_CASE("stage errors carry the stage name") {
    // A window too short for localization trips the M >= 4(d+2) and range
    // guards; direct config errors surface before any stage.
    const auto f = synth_random(1, 6, 64, 47, wide_bounds());
    ReconstructionConfig cfg;
    cfg.K = 1;
    cfg.d1 = 6;
    cfg.M = 64;
    cfg.bounds = wide_bounds();
    const auto w = make_window<double>(f, -80, 80);  // < 2M
    CHECK_THROWS_AS(reconstruct(w, cfg), ConfigError);
}
