// The explicit C-infinity bump: a scaled mollifier convolved with a box,
// with closed-form Fourier coefficients up to a mollifier cosine transform.
#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

#include <complex>
#include <vector>

#include "pwf/errors.hpp"
#include "pwf/real.hpp"

namespace pwf {

struct BumpSpec {
    double xi = 0.0;  // center
    double E = 1.0;   // half-support
    double t = 0.5;   // full flat width
    double s = 0.0;   // mollifier scale
    double r = 0.0;   // box width
    double delta = 0.0;  // mollifier mass

    void validate() const {
        if (!(2 * E > t) || t <= 0) throw ConfigError("BumpSpec: need 2E > t > 0");
        if (!(s > 0) || !(s + t / 2 < r / 2)) throw ConfigError("BumpSpec: need s + t/2 < r/2");
        if (!(2 * s + r / 2 < E)) throw ConfigError("BumpSpec: need 2s + r/2 < E");
    }
};

// Closed-form optimum (s*, r*) = ((E - t/2)/3, 2(E + t)/3).
std::pair<double, double> bump_params(double E, double t);

// The optimum sits exactly on the compatibility boundary; the constructed
// spec shrinks s by 0.999 to keep the inequalities strict.
BumpSpec make_bump(double xi, double E, double t);

// Delta = integral of exp(-1/(1-x^2)) over [-1, 1]; cached.
double mollifier_mass();

// (1 / (2 pi Delta)) * integral of e^{iwy} Psi(y) dy over [-1, 1].
// Real and even in w; evaluated as a cosine transform. The quadrature runs in
// binary128 with a deterministic panel layout, so values well below double
// epsilon are still correct to double rounding.
double mollifier_fc(double w);
float128 mollifier_fc_q(float128 w);

// c_k(g) by the closed formula; k = 0 is the limit r / (2 pi).
template <class R = double>
std::complex<R> bump_fc(const BumpSpec& spec, long k) {
    spec.validate();
    if (k == 0) return {R(spec.r) / two_pi<R>(), R(0)};
    const R kk = R(static_cast<double>(k));
    const R mf = R(RealTraits<float128>::to_double(mollifier_fc_q(float128(kk) * float128(spec.s))));
    const std::complex<R> phase = cis<R>(-kk * (R(spec.r) / R(2) + R(spec.xi)));
    const std::complex<R> box = (cis<R>(kk * R(spec.r)) - std::complex<R>(1)) / kk;
    return std::complex<R>(0, -1) * phase * box * mf;
}

// Full-precision variant used by decay diagnostics.
std::complex<float128> bump_fc_q(const BumpSpec& spec, long k);

// Coefficients for k in [kmin, kmax] in one pass; the mollifier quadratures
// are shared per |k| and every entry is independent, so the parallel build is
// bit-identical to the serial one.
std::vector<std::complex<double>> bump_fc_range_serial(const BumpSpec& spec, long kmin, long kmax);
std::vector<std::complex<double>> bump_fc_range(const BumpSpec& spec, long kmin, long kmax);

}  // namespace pwf
