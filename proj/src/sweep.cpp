#include "pwf/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "pwf/eckhoff.hpp"
#include "pwf/localize.hpp"
#include "pwf/pipeline.hpp"
#include "pwf/prony.hpp"

namespace pwf {

void SweepSpec::validate() const {
    if (Ms.size() < 2) throw ConfigError("SweepSpec: need at least 2 cutoffs for slope fitting");
    for (std::size_t i = 1; i < Ms.size(); ++i)
        if (Ms[i] <= Ms[i - 1]) throw ConfigError("SweepSpec: cutoffs must be ascending");
    if (trials < 1) throw ConfigError("SweepSpec: trials must be >= 1");
    if (K < 1) throw ConfigError("SweepSpec: K must be >= 1");
}

std::vector<int> SweepSpec::effective_ds() const {
    if (!d_list.empty()) return d_list;
    return {d1 / 2 - 1};
}

std::vector<long> default_M_grid() {
    return {16, 23, 32, 45, 64, 91, 128, 181, 256, 362, 512, 724, 1024};
}

double median_of(std::vector<double> v) {
    if (v.empty()) return std::nan("");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

FitStats fit_loglog(const std::vector<double>& Ms, const std::vector<double>& errs, double floor) {
    FitStats f;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < Ms.size() && i < errs.size(); ++i) {
        if (!std::isfinite(errs[i]) || errs[i] < floor) continue;
        const double x = std::log10(Ms[i]), y = std::log10(errs[i]);
        pts.emplace_back(x, y);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    f.used = static_cast<int>(pts.size());
    if (f.used < 2) return f;
    const double n = double(f.used);
    const double denom = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ybar = sy / n;
    for (const auto& p : pts) {
        const double pred = f.slope * p.first + f.intercept;
        ss_res += (p.second - pred) * (p.second - pred);
        ss_tot += (p.second - ybar) * (p.second - ybar);
    }
    f.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return f;
}

namespace {

// Matched per-jump location error: worst jump after nearest-neighbor pairing.
double matched_xi_error(const std::vector<double>& est, const std::vector<double>& truth) {
    double worst = 0;
    for (double t : truth) {
        double best = two_pi<double>();
        for (double e : est) best = std::min(best, circ_dist(e, t));
        worst = std::max(worst, best);
    }
    return worst;
}

struct Cell {
    int d;
    long M;
    int trial;
};

void run_cell_single(const SweepSpec& spec, const Cell& c, SweepRow& row) {
    const auto f = synth_random(1, spec.d1, c.M + c.d + 2, spec.seed + c.trial, spec.bounds);
    const auto w = make_window_serial<double>(f, c.M, c.M + c.d + 1);
    const auto est = resolve_jump(w, c.d, c.M);
    row.values.emplace_back("xi_err", circ_dist(est.xi, f.singular.jumps[0].xi));
    for (int l = 0; l <= c.d; ++l)
        row.values.emplace_back("A" + std::to_string(l) + "_err",
                                std::abs(est.magnitudes[l] - f.singular.jumps[0].magnitudes[l]));
}

void run_cell_prony(const SweepSpec& spec, const Cell& c, SweepRow& row) {
    const auto f = synth_random(spec.K, spec.d1, c.M + 2 * spec.K, spec.seed + c.trial, spec.bounds);
    const auto w = make_window_serial<double>(f, c.M, c.M + 2 * spec.K - 1);
    const auto est = prony_estimate(make_prony_problem(w, spec.K, c.M, spec.bounds));
    std::vector<double> truth;
    for (const auto& j : f.singular.jumps) truth.push_back(j.xi);
    row.values.emplace_back("xi_err", matched_xi_error(est.xis, truth));
}

void run_cell_localize(const SweepSpec& spec, const Cell& c, SweepRow& row) {
    const auto f = synth_random_at(spec.loc_jumps, spec.d1, 3 * c.M + c.d + 2,
                                   spec.seed + c.trial, spec.bounds);
    const auto w = make_window_serial<double>(f, -2 * c.M, 2 * c.M);
    const BumpSpec bump = make_bump(spec.loc_center, spec.loc_E, 2.0 * spec.loc_E / 3.0);
    FourierWindow<double> g;
    g.first = -(3 * c.M + c.d + 1);
    g.values = bump_fc_range(bump, g.first, 3 * c.M + c.d + 1);
    const auto win = localized_coeffs_serial(w, g, bump, c.M, c.d);
    const auto est = locate_jump(win.coeffs, c.d, c.M);
    // Error against the jump the bump was centered on.
    double target = spec.loc_jumps[0], best = two_pi<double>();
    for (double xj : spec.loc_jumps)
        if (circ_dist(xj, spec.loc_center) < best) {
            best = circ_dist(xj, spec.loc_center);
            target = xj;
        }
    row.values.emplace_back("xi_err", circ_dist(est.xi, target));
}

void run_cell_pipeline(const SweepSpec& spec, const Cell& c, SweepRow& row) {
    ReconstructionConfig cfg;
    cfg.K = spec.K;
    cfg.d = c.d;
    cfg.d1 = spec.d1;
    cfg.M = c.M;
    cfg.bounds = spec.bounds;
    const long kmax = 2 * c.M + c.d + 1;
    const auto f = synth_random(spec.K, spec.d1, kmax, spec.seed + c.trial, spec.bounds);
    const auto w = make_window_serial<double>(f, -kmax, kmax);
    const auto t0 = std::chrono::steady_clock::now();
    const auto res = reconstruct(w, cfg);
    const auto rep = error_report(res, f, spec.r, spec.grid);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    double worst_xi = 0;
    for (double e : rep.xi_err) worst_xi = std::max(worst_xi, e);
    row.values.emplace_back("xi_err", worst_xi);
    for (int l = 0; l <= c.d; ++l) {
        double worst = 0;
        for (const auto& me : rep.mag_err) worst = std::max(worst, me[l]);
        row.values.emplace_back("A" + std::to_string(l) + "_err", worst);
    }
    row.values.emplace_back("sup_err", rep.sup_err);
    row.values.emplace_back("seconds", secs);
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec) {
    spec.validate();
    SweepResult out;
    out.spec = spec;
    const auto ds = spec.effective_ds();

    std::vector<Cell> cells;
    for (int d : ds)
        for (long M : spec.Ms)
            for (int t = 0; t < spec.trials; ++t) cells.push_back({d, M, t});
    out.rows.resize(cells.size());

    // Pre-warm the shared mollifier tables so parallel cells reuse them.
    if (spec.mode == SweepMode::Localize || spec.mode == SweepMode::Pipeline) {
        const long mmax = spec.Ms.back();
        const int dmax = *std::max_element(ds.begin(), ds.end());
        if (spec.mode == SweepMode::Localize) {
            const BumpSpec b = make_bump(spec.loc_center, spec.loc_E, 2.0 * spec.loc_E / 3.0);
            bump_fc_range(b, 0, 3 * mmax + dmax + 1);
        } else {
            const BumpSpec b = make_bump(0.0, spec.bounds.J3, 2.0 * spec.bounds.J3 / 3.0);
            bump_fc_range(b, 0, 3 * mmax + dmax + 1);
        }
    }

#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < static_cast<long>(cells.size()); ++i) {
        const Cell& c = cells[i];
        SweepRow& row = out.rows[i];
        row.d = c.d;
        row.M = c.M;
        row.trial = c.trial;
        row.status = "ok";
        try {
            switch (spec.mode) {
                case SweepMode::Single: run_cell_single(spec, c, row); break;
                case SweepMode::Prony: run_cell_prony(spec, c, row); break;
                case SweepMode::Localize: run_cell_localize(spec, c, row); break;
                case SweepMode::Pipeline: run_cell_pipeline(spec, c, row); break;
            }
        } catch (const Error& e) {
            row.status = e.what();
        }
    }

    // Quantity list: union over rows, in first-seen order.
    for (const auto& row : out.rows)
        for (const auto& kv : row.values)
            if (std::find(out.quantities.begin(), out.quantities.end(), kv.first) ==
                out.quantities.end())
                out.quantities.push_back(kv.first);

    bool all_failed = true;
    for (const auto& row : out.rows)
        if (row.status == "ok") all_failed = false;
    if (all_failed) throw NumericError("run_sweep: every trial failed");

    // Medians per (d, quantity, M) over successful trials.
    for (int d : ds) {
        for (const auto& q : out.quantities) {
            if (q == "seconds") continue;
            std::vector<double> med(spec.Ms.size(), std::nan(""));
            for (std::size_t mi = 0; mi < spec.Ms.size(); ++mi) {
                std::vector<double> vals;
                for (const auto& row : out.rows) {
                    if (row.d != d || row.M != spec.Ms[mi] || row.status != "ok") continue;
                    for (const auto& kv : row.values)
                        if (kv.first == q) vals.push_back(kv.second);
                }
                if (!vals.empty()) med[mi] = median_of(std::move(vals));
            }
            out.medians[d][q] = med;

            std::vector<double> msd(spec.Ms.begin(), spec.Ms.end());
            const auto fs = fit_loglog(msd, out.medians[d][q]);
            SlopeFit fit;
            fit.quantity = q;
            fit.d = d;
            fit.slope = fs.slope;
            fit.intercept = fs.intercept;
            fit.r2 = fs.r2;
            for (std::size_t mi = 0; mi < spec.Ms.size(); ++mi)
                if (std::isfinite(med[mi]) && med[mi] >= 100 * 2.220446049250313e-16)
                    fit.points.emplace_back(double(spec.Ms[mi]), med[mi]);
            out.fits.push_back(std::move(fit));
        }
    }
    return out;
}

CsvTable sweep_csv(const SweepResult& r) {
    CsvTable t;
    t.header = {"d", "M", "trial", "quantity", "value", "status"};
    for (const auto& row : r.rows) {
        if (row.status != "ok") {
            t.rows.push_back({std::to_string(row.d), std::to_string(row.M),
                              std::to_string(row.trial), "", "", row.status});
            continue;
        }
        for (const auto& kv : row.values)
            t.rows.push_back({std::to_string(row.d), std::to_string(row.M),
                              std::to_string(row.trial), kv.first, csv_field(kv.second), "ok"});
    }
    return t;
}

std::string sweep_dat(const SweepResult& r) {
    std::ostringstream out;
    out << "# M";
    for (const auto& [d, qmap] : r.medians)
        for (const auto& [q, med] : qmap) out << " d" << d << ":" << q;
    out << "\n";
    for (std::size_t mi = 0; mi < r.spec.Ms.size(); ++mi) {
        out << r.spec.Ms[mi];
        for (const auto& [d, qmap] : r.medians)
            for (const auto& [q, med] : qmap) out << " " << csv_field(med[mi]);
        out << "\n";
    }
    return out.str();
}

std::string sweep_gnuplot(const SweepResult& r, const std::string& dat_name) {
    std::ostringstream out;
    out << "set logscale xy\nset xlabel 'M'\nset ylabel 'error'\nset key outside\n";
    out << "plot ";
    int col = 2;
    bool first = true;
    for (const auto& [d, qmap] : r.medians) {
        for (const auto& [q, med] : qmap) {
            if (!first) out << ", \\\n     ";
            out << "'" << dat_name << "' using 1:" << col << " with linespoints title 'd=" << d
                << " " << q << "'";
            ++col;
            first = false;
        }
    }
    out << "\n";
    return out.str();
}

namespace {

struct SvgMapper {
    double xmin, xmax, ymin, ymax;
    double width = 720, height = 480, mleft = 70, mright = 190, mtop = 24, mbottom = 48;
    double px(double logx) const {
        return mleft + (logx - xmin) / (xmax - xmin) * (width - mleft - mright);
    }
    double py(double logy) const {
        return height - mbottom - (logy - ymin) / (ymax - ymin) * (height - mtop - mbottom);
    }
};

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                         "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

// Self-contained log-log SVG with the median curves, dashed reference orders
// and the raw data embedded as a comment.
std::string sweep_svg(const SweepResult& r) {
    std::ostringstream svg;
    SvgMapper m{};
    m.xmin = std::log10(double(r.spec.Ms.front()));
    m.xmax = std::log10(double(r.spec.Ms.back()));
    m.ymin = 1e300;
    m.ymax = -1e300;
    for (const auto& [d, qmap] : r.medians)
        for (const auto& [q, med] : qmap)
            for (double v : med)
                if (std::isfinite(v) && v > 0) {
                    m.ymin = std::min(m.ymin, std::log10(v));
                    m.ymax = std::max(m.ymax, std::log10(v));
                }
    if (m.ymin > m.ymax) {
        m.ymin = -16;
        m.ymax = 0;
    }
    m.ymin -= 0.5;
    m.ymax += 0.5;

    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << m.width << "' height='"
        << m.height << "' viewBox='0 0 " << m.width << " " << m.height << "'>\n";
    svg << "<rect width='100%' height='100%' fill='white'/>\n";

    // Axes and decade ticks.
    svg << "<g stroke='black' fill='none'><path d='M" << m.mleft << " " << m.mtop << " V"
        << m.height - m.mbottom << " H" << m.width - m.mright << "'/></g>\n";
    for (int e = int(std::ceil(m.ymin)); e <= int(std::floor(m.ymax)); ++e) {
        const double y = m.py(e);
        svg << "<line x1='" << m.mleft - 4 << "' y1='" << y << "' x2='" << m.width - m.mright
            << "' y2='" << y << "' stroke='#dddddd'/>\n";
        svg << "<text x='" << m.mleft - 8 << "' y='" << y + 4
            << "' font-size='11' text-anchor='end'>1e" << e << "</text>\n";
    }
    for (long M : r.spec.Ms) {
        const double x = m.px(std::log10(double(M)));
        svg << "<line x1='" << x << "' y1='" << m.height - m.mbottom << "' x2='" << x << "' y2='"
            << m.height - m.mbottom + 4 << "' stroke='black'/>\n";
        svg << "<text x='" << x << "' y='" << m.height - m.mbottom + 16
            << "' font-size='11' text-anchor='middle'>" << M << "</text>\n";
    }

    int ci = 0;
    double legend_y = m.mtop + 10;
    for (const auto& [d, qmap] : r.medians) {
        for (const auto& [q, med] : qmap) {
            const char* color = kColors[ci % 8];
            std::ostringstream path;
            bool started = false;
            for (std::size_t mi = 0; mi < r.spec.Ms.size(); ++mi) {
                if (!std::isfinite(med[mi]) || med[mi] <= 0) continue;
                path << (started ? " L" : "M") << m.px(std::log10(double(r.spec.Ms[mi]))) << " "
                     << m.py(std::log10(med[mi]));
                started = true;
            }
            if (started) {
                svg << "<path d='" << path.str() << "' fill='none' stroke='" << color
                    << "' stroke-width='1.5'/>\n";
            }
            svg << "<text x='" << m.width - m.mright + 10 << "' y='" << legend_y
                << "' font-size='11' fill='" << color << "'>d=" << d << " " << q << "</text>\n";
            legend_y += 14;
            ++ci;
        }
    }

    // Reference order lines anchored at the first finite point of xi_err.
    for (const auto& [d, qmap] : r.medians) {
        auto it = qmap.find("xi_err");
        if (it == qmap.end()) continue;
        double anchor = std::nan("");
        double m0 = 0;
        for (std::size_t mi = 0; mi < r.spec.Ms.size(); ++mi)
            if (std::isfinite(it->second[mi]) && it->second[mi] > 0) {
                anchor = it->second[mi];
                m0 = double(r.spec.Ms[mi]);
                break;
            }
        if (!std::isfinite(anchor)) continue;
        const double orders[3] = {-double(d) - 2.0, -double(d) - 1.0, -1.0};
        const char* names[3] = {"M^{-d-2}", "M^{-d-1}", "M^{-1}"};
        for (int oi = 0; oi < 3; ++oi) {
            std::ostringstream path;
            bool started = false;
            for (long M : r.spec.Ms) {
                const double v = anchor * std::pow(double(M) / m0, orders[oi]);
                const double ly = std::log10(v);
                if (ly < m.ymin || ly > m.ymax) continue;
                path << (started ? " L" : "M") << m.px(std::log10(double(M))) << " " << m.py(ly);
                started = true;
            }
            if (started)
                svg << "<path d='" << path.str()
                    << "' fill='none' stroke='#999999' stroke-dasharray='4 3'/>\n";
            svg << "<text x='" << m.width - m.mright + 10 << "' y='" << legend_y
                << "' font-size='10' fill='#999999'>" << names[oi] << " (d=" << d << ")</text>\n";
            legend_y += 12;
        }
    }

    svg << "<!-- data\n" << sweep_dat(r) << "-->\n</svg>\n";
    return svg.str();
}

}  // namespace pwf
