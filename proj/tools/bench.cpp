// Benchmark comparing the OpenMP kernels with their serial references.
// Both paths must produce bit-identical results; the comparison is asserted.
#include <chrono>
#include <cstdio>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pwf/bump.hpp"
#include "pwf/localize.hpp"
#include "pwf/model.hpp"

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <class F>
double time_best_of(F&& fn, int reps = 3) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, seconds(t0, std::chrono::steady_clock::now()));
    }
    return best;
}

void report(const char* name, long n, double ts, double tp, bool identical) {
    std::printf("%-28s n=%8ld  serial %8.3f ms  parallel %8.3f ms  speedup %5.2fx  %s\n", name, n,
                ts * 1e3, tp * 1e3, ts / tp, identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; both paths serial\n");
#endif

    const pwf::AprioriBounds bounds{1.0, 2.0, 1.0, 10.0};

    {
        const long M = 384;
        const int d = 2;
        const auto f = pwf::synth_random(2, 6, 2 * M, 7, bounds);
        pwf::FourierWindow<double> ws, wp;
        const double ts = time_best_of([&] { ws = pwf::make_window_serial<double>(f, -2 * M, 2 * M); });
        const double tp = time_best_of([&] { wp = pwf::make_window<double>(f, -2 * M, 2 * M); });
        report("window synthesis", 4 * M + 1, ts, tp,
               std::memcmp(ws.values.data(), wp.values.data(),
                           ws.values.size() * sizeof(ws.values[0])) == 0);

        const auto bump = pwf::make_bump(0.2, bounds.J3, 2 * bounds.J3 / 3);
        std::vector<std::complex<double>> gs, gp;
        const double bs =
            time_best_of([&] { gs = pwf::bump_fc_range_serial(bump, -(3 * M + d + 1), 3 * M + d + 1); }, 1);
        const double bp =
            time_best_of([&] { gp = pwf::bump_fc_range(bump, -(3 * M + d + 1), 3 * M + d + 1); }, 1);
        report("bump coefficients", 6 * M + 2 * d + 3, bs, bp,
               std::memcmp(gs.data(), gp.data(), gs.size() * sizeof(gs[0])) == 0);

        pwf::FourierWindow<double> g;
        g.first = -(3 * M + d + 1);
        g.values = gp;
        pwf::LocalizedWindow ls, lp;
        const double cs =
            time_best_of([&] { ls = pwf::localized_coeffs_serial(ws, g, bump, M, d); });
        const double cp = time_best_of([&] { lp = pwf::localized_coeffs(ws, g, bump, M, d); });
        report("localized convolution", M + d + 2, cs, cp,
               std::memcmp(ls.coeffs.values.data(), lp.coeffs.values.data(),
                           ls.coeffs.values.size() * sizeof(ls.coeffs.values[0])) == 0);
    }
    return 0;
}
