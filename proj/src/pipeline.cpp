#include "pwf/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace pwf {

namespace {

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

SingularPart estimated_singular(const std::vector<JumpEstimate<double>>& jumps, int d) {
    SingularPart s;
    s.d1 = d;
    for (const auto& j : jumps) {
        SingularPart::Jump out;
        out.xi = j.xi;
        out.magnitudes = j.magnitudes;
        s.jumps.push_back(std::move(out));
    }
    std::sort(s.jumps.begin(), s.jumps.end(),
              [](const auto& a, const auto& b) { return a.xi < b.xi; });
    return s;
}

// c_k(Psi~) = c_k(f) - c_k(Phi~) for |k| <= M.
FourierWindow<double> corrected_smooth(const FourierWindow<double>& f_window,
                                       const SingularPart& est, int d, long M) {
    FourierWindow<double> w;
    w.first = -M;
    w.values.resize(2 * M + 1);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < 2 * M + 1; ++i) {
        const long k = i - M;
        w.values[i] = f_window.at(k) - singular_fourier<double>(est, d, k);
    }
    w.symmetric = true;
    return w;
}

}  // namespace

ReconstructionResult reconstruct(const FourierWindow<double>& f_window,
                                 const ReconstructionConfig& cfg) {
    cfg.validate();
    const int d = cfg.effective_d();
    const long M = cfg.M;
    if (!f_window.covers(-2 * M, 2 * M))
        throw ConfigError("reconstruct: window must cover [-2M, 2M]");
    if (!f_window.covers(M, M + std::max<long>(2 * cfg.K - 1, d + 1)))
        throw ConfigError("reconstruct: window too short for Prony/resolution");

    ReconstructionResult res;
    res.config = cfg;

    // (a) Coarse locations. On rejection, retry once from the highest base
    // index the window allows (up to 2M) before giving up.
    double t0 = now_s();
    PronyEstimate coarse;
    try {
        coarse = prony_estimate(make_prony_problem(f_window, cfg.K, M, cfg.bounds));
    } catch (const NumericError& e) {
        const long base2 = std::min<long>(2 * M, f_window.last() - (2 * cfg.K - 1));
        if (base2 <= M) throw PipelineError("prony", e.what());
        try {
            coarse = prony_estimate(make_prony_problem(f_window, cfg.K, base2, cfg.bounds));
        } catch (const NumericError& e2) {
            throw PipelineError("prony", e2.what());
        }
    }
    res.timings.prony_s = now_s() - t0;

    // (b) Per-jump coefficient windows.
    t0 = now_s();
    std::vector<LocalizedWindow> windows;
    try {
        windows = localize_all(f_window, coarse.xis, cfg.bounds.J3, cfg.d1, d, M);
    } catch (const Error& e) {
        throw PipelineError("localize", e.what());
    }
    res.timings.localize_s = now_s() - t0;

    // (c) Single-jump resolution per window; windows are independent.
    t0 = now_s();
    res.jumps.resize(windows.size());
    std::string resolve_failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (long j = 0; j < static_cast<long>(windows.size()); ++j) {
        try {
            res.jumps[j] = resolve_jump(windows[j].coeffs, d, M);
        } catch (const Error& e) {
#pragma omp critical
            resolve_failure = e.what();
        }
    }
    if (!resolve_failure.empty()) throw PipelineError("resolve", resolve_failure);
    std::sort(res.jumps.begin(), res.jumps.end(),
              [](const auto& a, const auto& b) { return a.xi < b.xi; });
    res.timings.resolve_s = now_s() - t0;

    // (d)+(e) Corrected smooth coefficients.
    t0 = now_s();
    res.smooth_coeffs = corrected_smooth(f_window, estimated_singular(res.jumps, d), d, M);
    res.timings.synth_s = now_s() - t0;
    return res;
}

ReconstructionResult reconstruct_oracle(const FourierWindow<double>& f_window,
                                        const TestFunction& truth,
                                        const ReconstructionConfig& cfg) {
    cfg.validate();
    const int d = cfg.effective_d();
    const long M = cfg.M;
    ReconstructionResult res;
    res.config = cfg;
    for (const auto& j : truth.singular.jumps) {
        JumpEstimate<double> est;
        est.xi = j.xi;
        est.omega = cis<double>(-j.xi);
        est.magnitudes.assign(j.magnitudes.begin(), j.magnitudes.begin() + d + 1);
        est.diagnostics.magnitudes_c.assign(est.magnitudes.begin(), est.magnitudes.end());
        res.jumps.push_back(std::move(est));
    }
    res.smooth_coeffs = corrected_smooth(f_window, estimated_singular(res.jumps, d), d, M);
    return res;
}

double eval_reconstruction(const ReconstructionResult& res, double x) {
    const long M = res.config.M;
    double v = res.smooth_coeffs.at(0).real();
    for (long k = 1; k <= M; ++k)
        v += 2.0 * (res.smooth_coeffs.at(k) * cis<double>(double(k) * x)).real();
    for (const auto& j : res.jumps)
        for (std::size_t l = 0; l < j.magnitudes.size(); ++l)
            v += j.magnitudes[l] * basis_V<double>(static_cast<int>(l), x, j.xi);
    return v;
}

ErrorReport error_report(const ReconstructionResult& res, const TestFunction& truth, double r,
                         long grid) {
    if (grid < 256) throw ConfigError("error_report: grid must be >= 256");
    const std::size_t K = truth.singular.jumps.size();
    if (res.jumps.size() != K) throw MatchingError("error_report: jump count mismatch");
    if (K > 8) throw ConfigError("error_report: K must be <= 8 for exact matching");

    // Bijective nearest-neighbor assignment by brute-force permutations.
    std::vector<std::size_t> perm(K), best_perm(K);
    std::iota(perm.begin(), perm.end(), 0);
    double best_cost = -1.0;
    std::vector<std::size_t> p = perm;
    do {
        double cost = 0;
        for (std::size_t j = 0; j < K; ++j)
            cost += circ_dist(res.jumps[p[j]].xi, truth.singular.jumps[j].xi);
        if (best_cost < 0 || cost < best_cost) {
            best_cost = cost;
            best_perm = p;
        }
    } while (std::next_permutation(p.begin(), p.end()));

    ErrorReport rep;
    rep.r = r;
    rep.grid_size = grid;
    for (std::size_t j = 0; j < K; ++j) {
        const auto& est = res.jumps[best_perm[j]];
        const auto& tj = truth.singular.jumps[j];
        const double dx = circ_dist(est.xi, tj.xi);
        rep.xi_err.push_back(dx);
        std::vector<double> me;
        for (std::size_t l = 0; l < est.magnitudes.size(); ++l)
            me.push_back(std::abs(est.magnitudes[l] - tj.magnitudes[l]));
        rep.mag_err.push_back(std::move(me));
    }
    // Ambiguity guard: a confident bijection needs every matched distance
    // below J3/4.
    for (double dx : rep.xi_err)
        if (K > 1 && dx > res.config.bounds.J3 / 4.0)
            throw MatchingError("error_report: ambiguous jump assignment");

    for (long g = 0; g < grid; ++g) {
        const double x = -pi_v<double>() + two_pi<double>() * double(g) / double(grid);
        bool excluded = false;
        for (const auto& tj : truth.singular.jumps)
            if (circ_dist(x, tj.xi) < r) excluded = true;
        if (excluded) continue;
        const double err = std::abs(eval_reconstruction(res, x) - eval(truth, x));
        rep.sup_err = std::max(rep.sup_err, err);
    }
    return rep;
}

}  // namespace pwf
