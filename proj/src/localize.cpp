#include "pwf/localize.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pwf {

namespace {

void check_ranges(const FourierWindow<double>& f_window, const FourierWindow<double>& bump_coeffs,
                  long M, int d) {
    if (M < d + 2) throw ConfigError("localized_coeffs: need M >= d+2");
    if (!f_window.covers(-2 * M, 2 * M))
        throw ConfigError("localized_coeffs: f window must cover [-2M, 2M]");
    // k - i for k in [0, M+d+1], i in [-2M, 2M].
    if (!bump_coeffs.covers(-2 * M, 3 * M + d + 1))
        throw ConfigError("localized_coeffs: bump window must cover [-2M, 3M+d+1]");
}

std::complex<double> convolve_at(const FourierWindow<double>& f_window,
                                 const FourierWindow<double>& bump_coeffs, long M, long k) {
    CompensatedSum acc;
    for (long i = -2 * M; i <= 2 * M; ++i) acc.add(f_window.at(i) * bump_coeffs.at(k - i));
    return acc.value();
}

}  // namespace

LocalizedWindow localized_coeffs_serial(const FourierWindow<double>& f_window,
                                        const FourierWindow<double>& bump_coeffs,
                                        const BumpSpec& spec, long M, int d) {
    check_ranges(f_window, bump_coeffs, M, d);
    LocalizedWindow w;
    w.bump = spec;
    w.M = M;
    w.coeffs.first = 0;
    w.coeffs.values.resize(M + d + 2);
    for (long k = 0; k <= M + d + 1; ++k)
        w.coeffs.values[k] = convolve_at(f_window, bump_coeffs, M, k);
    return w;
}

LocalizedWindow localized_coeffs(const FourierWindow<double>& f_window,
                                 const FourierWindow<double>& bump_coeffs,
                                 const BumpSpec& spec, long M, int d) {
    check_ranges(f_window, bump_coeffs, M, d);
    LocalizedWindow w;
    w.bump = spec;
    w.M = M;
    w.coeffs.first = 0;
    w.coeffs.values.resize(M + d + 2);
    const long n = M + d + 2;
#pragma omp parallel for schedule(static)
    for (long k = 0; k < n; ++k)
        w.coeffs.values[k] = convolve_at(f_window, bump_coeffs, M, k);
    return w;
}

std::vector<LocalizedWindow> localize_all(const FourierWindow<double>& f_window,
                                          const std::vector<double>& xhats, double J3, int d1,
                                          int d, long M) {
    if (2 * d + 1 > d1) throw ConfigError("localize_all: need 2d+1 <= d1");
    for (std::size_t a = 0; a < xhats.size(); ++a)
        for (std::size_t b = a + 1; b < xhats.size(); ++b)
            if (circ_dist(xhats[a], xhats[b]) < J3 / 3.0)
                throw InfeasibleError("localize_all: coarse estimates closer than J3/3");

    std::vector<LocalizedWindow> out;
    out.reserve(xhats.size());
    for (std::size_t j = 0; j < xhats.size(); ++j) {
        const BumpSpec spec = make_bump(xhats[j], /*E=*/J3, /*t=*/2.0 * J3 / 3.0);
        FourierWindow<double> g;
        g.first = -(3 * M + d + 1);
        g.values = bump_fc_range(spec, g.first, 3 * M + d + 1);
        LocalizedWindow w = localized_coeffs(f_window, g, spec, M, d);
        w.jump_index = static_cast<int>(j);
        out.push_back(std::move(w));
    }
    return out;
}

}  // namespace pwf
