// Ground-truth piecewise-smooth functions: jump data plus a finite
// trigonometric smooth part, exact Fourier coefficients and pointwise values.
#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "pwf/bernoulli.hpp"
#include "pwf/errors.hpp"
#include "pwf/real.hpp"

namespace pwf {

struct AprioriBounds {
    double J1 = 1.0;  // lower bound on |A_{0,j}|
    double J2 = 2.0;  // upper bound on |A_{0,j}|
    double J3 = 1.0;  // minimal circular distance between jumps
    double T = 10.0;  // order-0 residual bound constant (recorded, not consumed)
};

struct SingularPart {
    struct Jump {
        double xi = 0.0;                 // radians in [-pi, pi)
        std::vector<double> magnitudes;  // A_{0..d1}
    };
    std::vector<Jump> jumps;
    int d1 = 0;

    void validate() const {
        double prev = -4.0;  // below -pi
        for (const auto& j : jumps) {
            if (j.xi < -pi_v<double>() || j.xi >= pi_v<double>())
                throw ConfigError("SingularPart: jump location outside [-pi, pi)");
            if (j.xi <= prev) throw ConfigError("SingularPart: jump locations must be strictly increasing");
            prev = j.xi;
            if (static_cast<int>(j.magnitudes.size()) != d1 + 1)
                throw ConfigError("SingularPart: magnitude list must have length d1+1");
        }
    }

    // Ground-truth checks for detection experiments.
    void validate_as_truth(const AprioriBounds& b) const {
        validate();
        bool any = false;
        for (std::size_t i = 0; i < jumps.size(); ++i) {
            if (std::abs(jumps[i].magnitudes.at(0)) >= b.J1) any = true;
            for (std::size_t k = i + 1; k < jumps.size(); ++k)
                if (circ_dist(jumps[i].xi, jumps[k].xi) < b.J3)
                    throw ConfigError("SingularPart: jumps closer than J3");
        }
        if (!jumps.empty() && !any)
            throw ConfigError("SingularPart: no jump with |A_0| >= J1");
    }
};

struct SmoothPart {
    int d1 = 0;
    double R = 0.0;                             // |f_k| <= R k^{-d1-2}
    double f0 = 0.0;                            // mean (real)
    std::vector<std::complex<double>> coeffs;   // f_k for k = 1..N; f_{-k} = conj(f_k)

    long range() const { return static_cast<long>(coeffs.size()); }

    std::complex<double> at(long k) const {
        if (k == 0) return {f0, 0.0};
        const long a = k > 0 ? k : -k;
        if (a > range()) return {0.0, 0.0};
        return k > 0 ? coeffs[a - 1] : std::conj(coeffs[a - 1]);
    }

    void validate() const {
        for (long k = 1; k <= range(); ++k) {
            const double bound = R * std::pow(double(k), -(d1 + 2)) * (1.0 + 64 * RealTraits<double>::eps());
            if (std::abs(at(k)) > bound)
                throw ConfigError("SmoothPart: coefficient decay bound violated");
        }
    }
};

struct TestFunction {
    SingularPart singular;
    SmoothPart smooth;
    std::uint64_t seed = 0;
};

// A contiguous block of Fourier coefficients.
template <class R = double>
struct FourierWindow {
    using C = std::complex<R>;
    long first = 0;
    std::vector<C> values;
    bool symmetric = false;

    long last() const { return first + static_cast<long>(values.size()) - 1; }
    bool covers(long kmin, long kmax) const { return first <= kmin && kmax <= last(); }

    const C& at(long k) const {
        if (k < first || k > last()) throw RangeError("FourierWindow: index out of window");
        return values[k - first];
    }

    // When flagged symmetric the window must cover [-N, N] with c_{-k} = conj(c_k).
    void validate() const {
        if (!symmetric) return;
        if (first != -last()) throw ConfigError("FourierWindow: symmetric window must cover [-N, N]");
        for (long k = 1; k <= last(); ++k) {
            const C d = at(-k) - cconj(at(k));
            if (cabs(d) > R(1e-12) * (R(1) + cabs(at(k))))
                throw ConfigError("FourierWindow: conjugate symmetry violated");
        }
    }
};

// V_l(x; xi) = -(2 pi)^l / (l+1)! * B_{l+1}((x - xi)/2pi), periodized;
// the value at x == xi is the right-sided limit.
template <class R = double>
R basis_V(int l, R x, R xi) {
    if (l < 0 || l > 15) throw UnsupportedError("basis_V: order must be in [0, 15]");
    R u = (x - xi) / two_pi<R>();
    u -= RealTraits<R>::floor(u);  // [0, 1), right-continuous at the jump
    R fact(1);
    for (int i = 2; i <= l + 1; ++i) fact *= R(i);
    return -powi(two_pi<R>(), l) / fact * bernoulli<R>(l + 1, u);
}

// c_k(Phi_d) for the given singular part; c_0 = 0 by normalization.
template <class R = double>
std::complex<R> singular_fourier(const SingularPart& s, int d, long k) {
    using C = std::complex<R>;
    if (d > s.d1) throw ConfigError("singular_fourier: order exceeds stored smoothness");
    if (k == 0) return C(0);
    C total(0);
    const C ik = C(0, R(1)) * R(static_cast<double>(k));
    for (const auto& j : s.jumps) {
        C inv_pow = C(1) / ik;  // (ik)^{-l-1}
        C inner(0);
        for (int l = 0; l <= d; ++l) {
            inner += inv_pow * R(j.magnitudes[l]);
            inv_pow /= ik;
        }
        total += cis<R>(-R(static_cast<double>(k)) * R(j.xi)) * inner;
    }
    return total / two_pi<R>();
}

// c_k(f) = c_k(Phi_{d_use}) + f_k.
template <class R = double>
std::complex<R> exact_fourier(const TestFunction& f, int d_use, long k) {
    const auto fk = f.smooth.at(k);
    std::complex<R> v(R(fk.real()), R(fk.imag()));
    if (k != 0) v += singular_fourier<R>(f.singular, d_use, k);
    return v;
}

template <class R = double>
std::complex<R> exact_fourier(const TestFunction& f, long k) {
    return exact_fourier<R>(f, f.singular.d1, k);
}

// Pointwise value: singular expansion plus symmetric trigonometric sum.
template <class R = double>
R eval(const TestFunction& f, R x) {
    R s(0);
    for (const auto& j : f.singular.jumps)
        for (int l = 0; l <= f.singular.d1; ++l)
            s += R(j.magnitudes[l]) * basis_V<R>(l, x, R(j.xi));
    s += R(f.smooth.f0);
    for (long k = 1; k <= f.smooth.range(); ++k) {
        const auto fk = f.smooth.at(k);
        const std::complex<R> term = std::complex<R>(R(fk.real()), R(fk.imag())) * cis<R>(R(static_cast<double>(k)) * x);
        s += R(2) * term.real();
    }
    return s;
}

namespace detail {
// Uniform [0,1) from the top 53 bits; keeps draws identical across standard
// library implementations.
inline double u01(std::mt19937_64& rng) { return double(rng() >> 11) * 0x1.0p-53; }
inline double uniform(std::mt19937_64& rng, double a, double b) { return a + (b - a) * u01(rng); }
}  // namespace detail

namespace detail {
inline void draw_magnitudes_and_smooth(TestFunction& f, int d1, long M,
                                       const AprioriBounds& bounds, std::mt19937_64& rng) {
    for (auto& jump : f.singular.jumps) {
        jump.magnitudes.resize(d1 + 1);
        const double sign = u01(rng) < 0.5 ? -1.0 : 1.0;
        jump.magnitudes[0] = sign * uniform(rng, bounds.J1, bounds.J2);
        for (int l = 1; l <= d1; ++l) jump.magnitudes[l] = uniform(rng, -1.0, 1.0);
    }
    f.smooth.d1 = d1;
    f.smooth.f0 = uniform(rng, -1.0, 1.0);
    f.smooth.coeffs.resize(M);
    double rmax = 0.0;
    for (long k = 1; k <= M; ++k) {
        const double c = uniform(rng, 0.1, 1.0);
        const double phase = uniform(rng, 0.0, two_pi<double>());
        rmax = std::max(rmax, c);
        f.smooth.coeffs[k - 1] = std::polar(c * std::pow(double(k), -(d1 + 2)), phase);
    }
    f.smooth.R = rmax;
}
}  // namespace detail

// Deterministic random test function. Draw order is fixed: jump locations
// (rejection until circular separation >= J3), then per-jump magnitudes
// (|A_0| in [J1,J2] with random sign, A_{l>=1} uniform in [-1,1]), then f_0,
// then (magnitude, phase) per smooth coefficient.
inline TestFunction synth_random(int K, int d1, long M, std::uint64_t seed,
                                 const AprioriBounds& bounds) {
    if (K < 0 || d1 < 0 || M < 0) throw ConfigError("synth_random: negative parameter");
    if (bounds.J1 > bounds.J2) throw ConfigError("synth_random: J1 must be <= J2");
    if (K > 0 && K * bounds.J3 >= two_pi<double>())
        throw ConfigError("synth_random: infeasible geometry, K*J3 >= 2*pi");

    std::mt19937_64 rng(seed);
    TestFunction f;
    f.seed = seed;
    f.singular.d1 = d1;

    if (K > 0) {
        std::vector<double> xs(K);
        bool ok = false;
        for (int attempt = 0; attempt < 100000 && !ok; ++attempt) {
            for (int j = 0; j < K; ++j) xs[j] = detail::uniform(rng, -pi_v<double>(), pi_v<double>());
            std::sort(xs.begin(), xs.end());
            ok = true;
            for (int a = 0; a < K && ok; ++a)
                for (int b = a + 1; b < K && ok; ++b)
                    if (circ_dist(xs[a], xs[b]) < bounds.J3) ok = false;
        }
        if (!ok) throw ConfigError("synth_random: could not place jumps at separation J3");
        for (int j = 0; j < K; ++j) {
            SingularPart::Jump jump;
            jump.xi = xs[j];
            f.singular.jumps.push_back(std::move(jump));
        }
    }

    detail::draw_magnitudes_and_smooth(f, d1, M, bounds, rng);
    f.singular.validate();
    f.smooth.validate();
    return f;
}

// Same drawing scheme with the jump locations pinned (used for the
// two-jumps-at-0-and-3 experiments).
inline TestFunction synth_random_at(const std::vector<double>& xis, int d1, long M,
                                    std::uint64_t seed, const AprioriBounds& bounds) {
    std::mt19937_64 rng(seed);
    TestFunction f;
    f.seed = seed;
    f.singular.d1 = d1;
    for (double xi : xis) {
        SingularPart::Jump jump;
        jump.xi = xi;
        f.singular.jumps.push_back(std::move(jump));
    }
    detail::draw_magnitudes_and_smooth(f, d1, M, bounds, rng);
    f.singular.validate();
    f.smooth.validate();
    return f;
}

// Coefficient window [kmin, kmax] of a test function; entries are independent,
// so the parallel build is bit-identical to the serial one.
template <class R = double>
FourierWindow<R> make_window_serial(const TestFunction& f, long kmin, long kmax) {
    if (kmax < kmin) throw ConfigError("make_window: empty range");
    FourierWindow<R> w;
    w.first = kmin;
    w.values.resize(kmax - kmin + 1);
    for (long k = kmin; k <= kmax; ++k) w.values[k - kmin] = exact_fourier<R>(f, k);
    w.symmetric = (kmin == -kmax);
    return w;
}

template <class R = double>
FourierWindow<R> make_window(const TestFunction& f, long kmin, long kmax) {
    if (kmax < kmin) throw ConfigError("make_window: empty range");
    FourierWindow<R> w;
    w.first = kmin;
    w.values.resize(kmax - kmin + 1);
    const long n = kmax - kmin + 1;
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) w.values[i] = exact_fourier<R>(f, kmin + i);
    w.symmetric = (kmin == -kmax);
    return w;
}

}  // namespace pwf
