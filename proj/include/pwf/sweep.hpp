// Convergence-order experiments: error sweeps over M with median aggregation
// and log-log slope fits, plus CSV / SVG / gnuplot emission.
#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pwf/model.hpp"
#include "pwf/serialize.hpp"

namespace pwf {

enum class SweepMode { Single, Pipeline, Prony, Localize };

struct SweepSpec {
    SweepMode mode = SweepMode::Single;
    std::vector<long> Ms;       // ascending geometric grid, >= 2 entries
    std::vector<int> d_list;    // reconstruction orders (overlay); empty = {default}
    int K = 1;
    int d1 = 6;
    AprioriBounds bounds;
    int trials = 1;
    std::uint64_t seed = 0;
    double r = 0.2;             // pipeline: D_r exclusion radius
    long grid = 512;            // pipeline: sup-error grid
    // Localize mode (the two-jump configuration):
    std::vector<double> loc_jumps = {0.0, 3.0};
    double loc_center = 1.0 / 40.0;
    double loc_E = 8.0 / 3.0;   // bump half-support

    void validate() const;
    std::vector<int> effective_ds() const;
};

// Default geometric cutoff grid.
std::vector<long> default_M_grid();

struct SlopeFit {
    std::string quantity;
    int d = 0;
    double slope = 0, intercept = 0, r2 = 0;
    std::vector<std::pair<double, double>> points;  // (M, error) actually used
};

struct SweepRow {
    int d = 0;
    long M = 0;
    int trial = 0;
    std::vector<std::pair<std::string, double>> values;
    std::string status;  // "ok" or the failure description
};

struct SweepResult {
    SweepSpec spec;
    std::vector<std::string> quantities;
    std::vector<SweepRow> rows;  // sorted by (d, M, trial)
    // medians[d][quantity][i] corresponds to spec.Ms[i]; NaN if all trials failed.
    std::map<int, std::map<std::string, std::vector<double>>> medians;
    std::vector<SlopeFit> fits;
};

SweepResult run_sweep(const SweepSpec& spec);

CsvTable sweep_csv(const SweepResult& r);
std::string sweep_svg(const SweepResult& r);
std::string sweep_gnuplot(const SweepResult& r, const std::string& dat_name);
std::string sweep_dat(const SweepResult& r);

// log10-log10 least squares, excluding values below the precision floor
// (100 x machine epsilon by default) and non-finite values.
struct FitStats {
    double slope = 0, intercept = 0, r2 = 0;
    int used = 0;
};
FitStats fit_loglog(const std::vector<double>& Ms, const std::vector<double>& errs,
                    double floor = 100 * 2.220446049250313e-16);

double median_of(std::vector<double> v);

}  // namespace pwf
