// Command-line harness: synthesize test functions, reconstruct, run
// convergence sweeps and the identity checks.
//
// Exit codes: 0 ok, 1 numerical failure, 2 configuration error.
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pwf/eckhoff.hpp"
#include "pwf/localize.hpp"
#include "pwf/oracles.hpp"
#include "pwf/pipeline.hpp"
#include "pwf/serialize.hpp"
#include "pwf/sweep.hpp"

namespace {

using nlohmann::json;

pwf::AprioriBounds bounds_from(const json& j) {
    pwf::AprioriBounds b;
    if (j.contains("bounds")) {
        const auto& o = j["bounds"];
        b.J1 = o.value("J1", b.J1);
        b.J2 = o.value("J2", b.J2);
        b.J3 = o.value("J3", b.J3);
        b.T = o.value("T", b.T);
    }
    return b;
}

json parse_config(const std::string& path) {
    json j;
    try {
        j = json::parse(pwf::read_file(path));
    } catch (const std::exception& e) {
        throw pwf::ConfigError(std::string("config: ") + e.what());
    }
    if (!j.contains("schema") || j["schema"].get<int>() != 1)
        throw pwf::ConfigError("config: unsupported schema (expected 1)");
    return j;
}

int cmd_synth(const std::string& config_path, const std::string& out_path) {
    const json cfg = parse_config(config_path);
    const int K = cfg.at("K").get<int>();
    const int d1 = cfg.at("d1").get<int>();
    const long M = cfg.at("M").get<long>();
    const std::uint64_t seed = cfg.value("seed", std::uint64_t{0});
    const auto bounds = bounds_from(cfg);
    pwf::TestFunction f;
    if (cfg.contains("jumps_at"))
        f = pwf::synth_random_at(cfg["jumps_at"].get<std::vector<double>>(), d1, M, seed, bounds);
    else
        f = pwf::synth_random(K, d1, M, seed, bounds);
    pwf::write_file(out_path, pwf::to_json(f));
    std::printf("synth: K=%zu d1=%d M=%ld seed=%llu R=%.6g -> %s\n", f.singular.jumps.size(), d1,
                M, static_cast<unsigned long long>(seed), f.smooth.R, out_path.c_str());
    return 0;
}

int cmd_reconstruct(const std::string& fn_path, long M, int d, int K, double r, long grid,
                    bool oracle, const std::string& csv_path, const std::string& result_path) {
    const auto f = pwf::test_function_from_json(pwf::read_file(fn_path));
    pwf::ReconstructionConfig cfg;
    cfg.K = K > 0 ? K : static_cast<int>(f.singular.jumps.size());
    cfg.d = d;
    cfg.d1 = f.singular.d1;
    cfg.M = M;
    cfg.validate();
    const int dd = cfg.effective_d();

    const long kmax = 2 * M + dd + 1;
    const auto window = pwf::make_window<double>(f, -kmax, kmax);

    pwf::CsvTable table;
    table.header = {"M", "d", "j", "xi_true", "xi_est", "xi_err", "l", "A_true", "A_est",
                    "A_err", "sup_err_Dr", "seconds", "status"};

    const auto t0 = std::chrono::steady_clock::now();
    int exit_code = 0;
    try {
        const auto res = oracle ? pwf::reconstruct_oracle(window, f, cfg)
                                : pwf::reconstruct(window, cfg);
        const auto rep = pwf::error_report(res, f, r, grid);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        for (std::size_t j = 0; j < res.jumps.size(); ++j) {
            for (int l = 0; l <= dd; ++l) {
                table.rows.push_back(
                    {std::to_string(M), std::to_string(dd), std::to_string(j),
                     pwf::csv_field(f.singular.jumps[j].xi), pwf::csv_field(res.jumps[j].xi),
                     pwf::csv_field(rep.xi_err[j]), std::to_string(l),
                     pwf::csv_field(f.singular.jumps[j].magnitudes[l]),
                     pwf::csv_field(res.jumps[j].magnitudes[l]), pwf::csv_field(rep.mag_err[j][l]),
                     pwf::csv_field(rep.sup_err), pwf::csv_field(secs), "ok"});
            }
        }
        if (!result_path.empty()) pwf::write_file(result_path, pwf::to_json(res));
        std::printf("reconstruct: M=%ld d=%d sup_err(D_%g)=%.3e\n", M, dd, r, rep.sup_err);
    } catch (const pwf::NumericError& e) {
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        table.rows.push_back({std::to_string(M), std::to_string(dd), "", "", "", "", "", "", "",
                              "", "", pwf::csv_field(secs), e.what()});
        std::fprintf(stderr, "reconstruct failed: %s\n", e.what());
        exit_code = 1;
    }
    if (!csv_path.empty()) pwf::write_file(csv_path, pwf::csv_emit(table));
    return exit_code;
}

pwf::SweepSpec sweep_spec_from(const json& cfg) {
    pwf::SweepSpec spec;
    const std::string mode = cfg.value("mode", std::string("single"));
    if (mode == "single")
        spec.mode = pwf::SweepMode::Single;
    else if (mode == "pipeline")
        spec.mode = pwf::SweepMode::Pipeline;
    else if (mode == "prony")
        spec.mode = pwf::SweepMode::Prony;
    else if (mode == "localize")
        spec.mode = pwf::SweepMode::Localize;
    else
        throw pwf::ConfigError("sweep: unknown mode " + mode);
    spec.Ms = cfg.contains("Ms") ? cfg["Ms"].get<std::vector<long>>() : pwf::default_M_grid();
    if (cfg.contains("d")) {
        if (cfg["d"].is_array())
            spec.d_list = cfg["d"].get<std::vector<int>>();
        else
            spec.d_list = {cfg["d"].get<int>()};
    }
    spec.K = cfg.value("K", 1);
    spec.d1 = cfg.value("d1", 6);
    spec.trials = cfg.value("trials", 1);
    spec.seed = cfg.value("seed", std::uint64_t{0});
    spec.r = cfg.value("r", 0.2);
    spec.grid = cfg.value("grid", 512L);
    spec.bounds = bounds_from(cfg);
    if (cfg.contains("loc_jumps")) spec.loc_jumps = cfg["loc_jumps"].get<std::vector<double>>();
    spec.loc_center = cfg.value("loc_center", spec.loc_center);
    spec.loc_E = cfg.value("loc_E", spec.loc_E);
    return spec;
}

int emit_sweep(const pwf::SweepResult& result, const std::string& prefix) {
    pwf::write_file(prefix + ".csv", pwf::csv_emit(pwf::sweep_csv(result)));
    pwf::write_file(prefix + ".svg", pwf::sweep_svg(result));
    pwf::write_file(prefix + ".dat", pwf::sweep_dat(result));
    pwf::write_file(prefix + ".gp", pwf::sweep_gnuplot(result, prefix + ".dat"));
    for (const auto& fit : result.fits)
        std::printf("slope d=%d %-10s: %+.3f  (R2=%.4f, intercept=%.3f, points=%zu)\n", fit.d,
                    fit.quantity.c_str(), fit.slope, fit.r2, fit.intercept, fit.points.size());
    int failures = 0;
    for (const auto& row : result.rows)
        if (row.status != "ok") ++failures;
    if (failures)
        std::printf("note: %d/%zu trials failed and were excluded\n", failures,
                    result.rows.size());
    return 0;
}

int cmd_identities() {
    int bad = 0;
    auto check = [&bad](bool ok, const std::string& name) {
        std::printf("%s %s\n", ok ? "ok  " : "FAIL", name.c_str());
        if (!ok) ++bad;
    };

    bool f_zero = true, f_closed = true;
    for (int d = 0; d <= 8; ++d)
        for (int s = 0; s <= d + 1; ++s) {
            for (int t = s; t <= d; ++t)
                if (pwf::script_F(d, t, s) != 0) f_zero = false;
            if (s >= 1) {
                const pwf::BigInt expect = ((d + 1) % 2 ? -1 : 1) *
                                           pwf::big_factorial(d + 1 - s) *
                                           pwf::big_binomial(d + 1, s);
                if (pwf::script_F(d, s - 1, s) != expect) f_closed = false;
            }
        }
    check(f_zero, "script_F(d,t,s) = 0 for t >= s, d <= 8");
    check(f_closed, "script_F(d,s-1,s) closed form, d <= 8");

    bool dp = true;
    for (int n = 0; n <= 6 && dp; ++n) {
        auto g = [n](long k) {
            pwf::BigInt v = 0, p = 1;
            for (int i = 0; i <= n; ++i) {
                v += pwf::BigInt(i + 1) * p;
                p *= k;
            }
            return v;  // degree-n polynomial with leading coefficient n+1
        };
        if (pwf::difference_power(g, n, 3) != pwf::BigInt(n + 1) * pwf::big_factorial(n)) dp = false;
        if (pwf::difference_power(g, n + 1, 3) != 0) dp = false;
    }
    check(dp, "difference_power on polynomials (leading n!, then 0)");

    std::mt19937_64 rng(12345);
    auto u = [&rng](double a, double b) { return a + (b - a) * double(rng() >> 11) * 0x1.0p-53; };
    bool rec = true;
    double worst = 0;
    for (int c = 0; c < 500; ++c) {
        const int n = int(rng() % 6);
        const long k = 1 + long(rng() % 100);
        const std::complex<double> omega = std::polar(u(0.5, 1.5), u(-3.1, 3.1));
        std::vector<double> a(n + 1);
        for (auto& x : a) x = u(-2.0, 2.0);
        const auto [res, scale] = pwf::basic_recurrence_residual(omega, a, n, k);
        const double rel = scale > 0 ? std::abs(res) / scale : 0.0;
        worst = std::max(worst, rel);
        if (rel > 1e-9) rec = false;
    }
    check(rec, "basic recurrence residual <= 1e-9 relative (500 cases, worst " +
                   pwf::csv_field(worst) + ")");

    bool slopes = true;
    for (int l = 1; l <= 3 && slopes; ++l)
        for (int d = 1; d <= 3 && slopes; ++d) {
            std::vector<double> ks, vs;
            for (double k = 100; k <= 1e5; k *= 1.8) {
                ks.push_back(k);
                vs.push_back(std::abs(pwf::binom_fraction_sum(l, d, long(k))));
            }
            const auto fit = pwf::fit_loglog(ks, vs, 0.0);
            if (std::abs(fit.slope + double(d + l)) > 0.05) slopes = false;
        }
    check(slopes, "binom_fraction_sum decays like k^{-(d+l)} (slope within 0.05)");

    return bad ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier reconstruction of piecewise-smooth functions"};
    app.require_subcommand(1);

    std::string config_path, out_path = "function.json", fn_path, csv_path, result_path,
                prefix = "sweep";
    long M = 64, grid = 512;
    int d = -1, K = 0;
    double r = 0.2;
    bool oracle = false;

    auto* synth = app.add_subcommand("synth", "synthesize a random test function");
    synth->add_option("--config", config_path, "JSON config")->required();
    synth->add_option("--out", out_path, "output path");

    auto* rec = app.add_subcommand("reconstruct", "reconstruct from exact coefficients");
    rec->add_option("--function", fn_path, "test function file")->required();
    rec->add_option("--M", M, "coefficient cutoff")->required();
    rec->add_option("--d", d, "reconstruction order (default floor(d1/2)-1)");
    rec->add_option("--K", K, "number of jumps (default: from file)");
    rec->add_option("--r", r, "jump-free exclusion radius");
    rec->add_option("--grid", grid, "sup-error grid size");
    rec->add_flag("--oracle", oracle, "substitute true jump parameters");
    rec->add_option("--out", csv_path, "error-report CSV path");
    rec->add_option("--result", result_path, "reconstruction JSON path");

    auto* sweep = app.add_subcommand("sweep", "convergence sweep over M");
    sweep->add_option("--config", config_path, "JSON sweep spec")->required();
    sweep->add_option("--out-prefix", prefix, "output prefix (csv/svg/dat/gp)");

    auto* loc = app.add_subcommand("localize-demo", "two-jump localization experiment");
    std::vector<long> loc_ms;
    int loc_trials = 3, loc_d = 1, loc_d1 = 6;
    std::uint64_t loc_seed = 1;
    loc->add_option("--Ms", loc_ms, "cutoff grid");
    loc->add_option("--trials", loc_trials, "trials per M");
    loc->add_option("--seed", loc_seed, "base seed");
    loc->add_option("--d", loc_d, "reconstruction order");
    loc->add_option("--d1", loc_d1, "smoothness order");
    loc->add_option("--out-prefix", prefix, "output prefix");

    auto* ident = app.add_subcommand("identities", "run the combinatorial identity suite");
    (void)ident;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (synth->parsed()) return cmd_synth(config_path, out_path);
        if (rec->parsed())
            return cmd_reconstruct(fn_path, M, d, K, r, grid, oracle, csv_path, result_path);
        if (sweep->parsed()) {
            const auto spec = sweep_spec_from(parse_config(config_path));
            return emit_sweep(pwf::run_sweep(spec), prefix);
        }
        if (loc->parsed()) {
            pwf::SweepSpec spec;
            spec.mode = pwf::SweepMode::Localize;
            spec.Ms = loc_ms.empty() ? std::vector<long>{32, 45, 64, 91, 128, 181, 256} : loc_ms;
            spec.d_list = {loc_d};
            spec.d1 = loc_d1;
            spec.trials = loc_trials;
            spec.seed = loc_seed;
            return emit_sweep(pwf::run_sweep(spec), prefix);
        }
        if (ident->parsed()) return cmd_identities();
    } catch (const pwf::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const pwf::Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
