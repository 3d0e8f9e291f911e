// Fourier-domain localization: the truncated convolution of f-coefficients
// with bump coefficients that isolates one jump per window.
#pragma once

#include <complex>
#include <vector>

#include "pwf/bump.hpp"
#include "pwf/errors.hpp"
#include "pwf/model.hpp"

namespace pwf {

struct LocalizedWindow {
    int jump_index = 0;
    FourierWindow<double> coeffs;  // k = 0 .. M+d+1
    BumpSpec bump;
    long M = 0;
};

// Neumaier-compensated complex accumulator; terms are added in a fixed index
// order, so the result is independent of any outer parallel schedule.
struct CompensatedSum {
    double sr = 0, cr = 0, si = 0, ci = 0;
    void add(const std::complex<double>& z) {
        add_part(sr, cr, z.real());
        add_part(si, ci, z.imag());
    }
    std::complex<double> value() const { return {sr + cr, si + ci}; }

private:
    static void add_part(double& s, double& c, double v) {
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
};

// c~_k(h) = sum_{i=-2M}^{2M} c_i(f) c_{k-i}(g) for k = 0 .. M+d+1.
// f_window must cover [-2M, 2M] and bump_coeffs [-2M, 3M+d+1] exactly as the
// truncation rule requires.
LocalizedWindow localized_coeffs_serial(const FourierWindow<double>& f_window,
                                        const FourierWindow<double>& bump_coeffs,
                                        const BumpSpec& spec, long M, int d);
LocalizedWindow localized_coeffs(const FourierWindow<double>& f_window,
                                 const FourierWindow<double>& bump_coeffs,
                                 const BumpSpec& spec, long M, int d);

// One localized window per coarse estimate; bumps use the Algorithm-3
// parameters t = 2 J3 / 3, E = J3, centered at the estimates.
std::vector<LocalizedWindow> localize_all(const FourierWindow<double>& f_window,
                                          const std::vector<double>& xhats, double J3, int d1,
                                          int d, long M);

}  // namespace pwf
