// End-to-end reconstruction: Prony pre-localization, per-jump bump windows,
// single-jump resolution, and reassembly of the corrected series.
#pragma once

#include <complex>
#include <vector>

#include "pwf/eckhoff.hpp"
#include "pwf/errors.hpp"
#include "pwf/localize.hpp"
#include "pwf/model.hpp"
#include "pwf/prony.hpp"

namespace pwf {

struct ReconstructionConfig {
    int K = 1;
    int d = -1;  // -1: default floor(d1/2) - 1
    int d1 = 6;
    long M = 64;
    AprioriBounds bounds;

    int effective_d() const { return d >= 0 ? d : d1 / 2 - 1; }

    void validate() const {
        const int dd = effective_d();
        if (K < 1) throw ConfigError("ReconstructionConfig: K must be >= 1");
        if (dd < 0) throw ConfigError("ReconstructionConfig: reconstruction order must be >= 0");
        if (2 * dd + 1 > d1) throw ConfigError("ReconstructionConfig: need 2d+1 <= d1");
        if (M < 4 * (dd + 2)) throw ConfigError("ReconstructionConfig: need M >= 4(d+2)");
    }
};

struct StageTimings {
    double prony_s = 0, localize_s = 0, resolve_s = 0, synth_s = 0;
};

struct ReconstructionResult {
    std::vector<JumpEstimate<double>> jumps;  // sorted by xi
    FourierWindow<double> smooth_coeffs;      // c_k(Psi~), |k| <= M
    ReconstructionConfig config;
    StageTimings timings;
};

struct ErrorReport {
    std::vector<double> xi_err;                 // per jump, matched
    std::vector<std::vector<double>> mag_err;   // [jump][l]
    double sup_err = 0;                         // over D_r
    double r = 0;
    long grid_size = 0;
};

// Full Algorithm-1 run. The window must cover [-2M, 2M] (localization),
// M .. M+2K-1 (Prony) and M .. M+d+1 (resolution).
ReconstructionResult reconstruct(const FourierWindow<double>& f_window,
                                 const ReconstructionConfig& cfg);

// As above but with the jump parameters taken from ground truth; only the
// series correction is performed. Used by oracle self-tests.
ReconstructionResult reconstruct_oracle(const FourierWindow<double>& f_window,
                                        const TestFunction& truth,
                                        const ReconstructionConfig& cfg);

// Pointwise value of the reconstruction.
double eval_reconstruction(const ReconstructionResult& res, double x);

// Errors against ground truth: bijective jump matching, per-magnitude errors
// and the sup norm over the jump-free region D_r on a uniform grid.
ErrorReport error_report(const ReconstructionResult& res, const TestFunction& truth, double r,
                         long grid);

}  // namespace pwf
