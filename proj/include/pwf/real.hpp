// Scalar abstraction: the numeric kernels are generic over double, long double
// and __float128 so the same algebra can run at different precisions.
#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <string>

extern "C" {
#include <quadmath.h>
}

namespace pwf {

using float128 = __float128;

template <class R>
struct RealTraits;

template <>
struct RealTraits<double> {
    static double abs(double x) { return std::fabs(x); }
    static double sqrt(double x) { return std::sqrt(x); }
    static double cos(double x) { return std::cos(x); }
    static double sin(double x) { return std::sin(x); }
    static double exp(double x) { return std::exp(x); }
    static double log(double x) { return std::log(x); }
    static double atan2(double y, double x) { return std::atan2(y, x); }
    static double floor(double x) { return std::floor(x); }
    static double pow(double x, double y) { return std::pow(x, y); }
    static constexpr double eps() { return std::numeric_limits<double>::epsilon(); }
    static double pi() { return 3.14159265358979323846264338327950288; }
    static double from_string(const char* s) { return std::strtod(s, nullptr); }
    static double to_double(double x) { return x; }
    static constexpr const char* name() { return "double"; }
};

template <>
struct RealTraits<long double> {
    static long double abs(long double x) { return std::fabs(x); }
    static long double sqrt(long double x) { return std::sqrt(x); }
    static long double cos(long double x) { return std::cos(x); }
    static long double sin(long double x) { return std::sin(x); }
    static long double exp(long double x) { return std::exp(x); }
    static long double log(long double x) { return std::log(x); }
    static long double atan2(long double y, long double x) { return std::atan2(y, x); }
    static long double floor(long double x) { return std::floor(x); }
    static long double pow(long double x, long double y) { return std::pow(x, y); }
    static constexpr long double eps() { return std::numeric_limits<long double>::epsilon(); }
    static long double pi() { return 3.14159265358979323846264338327950288419717L; }
    static long double from_string(const char* s) { return std::strtold(s, nullptr); }
    static double to_double(long double x) { return static_cast<double>(x); }
    static constexpr const char* name() { return "long double"; }
};

template <>
struct RealTraits<float128> {
    static float128 abs(float128 x) { return fabsq(x); }
    static float128 sqrt(float128 x) { return sqrtq(x); }
    static float128 cos(float128 x) { return cosq(x); }
    static float128 sin(float128 x) { return sinq(x); }
    static float128 exp(float128 x) { return expq(x); }
    static float128 log(float128 x) { return logq(x); }
    static float128 atan2(float128 y, float128 x) { return atan2q(y, x); }
    static float128 floor(float128 x) { return floorq(x); }
    static float128 pow(float128 x, float128 y) { return powq(x, y); }
    static float128 eps() { return FLT128_EPSILON; }
    static float128 pi() { return M_PIq; }
    static float128 from_string(const char* s) { return strtoflt128(s, nullptr); }
    static double to_double(float128 x) { return static_cast<double>(x); }
    static constexpr const char* name() { return "binary128"; }
};

template <class R>
inline R pi_v() { return RealTraits<R>::pi(); }

template <class R>
inline R two_pi() { return R(2) * RealTraits<R>::pi(); }

// Complex helpers that avoid std:: functions unavailable for __float128.
template <class R>
inline R cabs2(const std::complex<R>& z) { return z.real() * z.real() + z.imag() * z.imag(); }

template <class R>
inline R cabs(const std::complex<R>& z) { return RealTraits<R>::sqrt(cabs2(z)); }

template <class R>
inline R carg(const std::complex<R>& z) { return RealTraits<R>::atan2(z.imag(), z.real()); }

// e^{i theta}
template <class R>
inline std::complex<R> cis(R theta) {
    return {RealTraits<R>::cos(theta), RealTraits<R>::sin(theta)};
}

template <class R>
inline std::complex<R> cconj(const std::complex<R>& z) { return {z.real(), -z.imag()}; }

// i^n for integer n (exact).
template <class R>
inline std::complex<R> ipow(long n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {R(1), R(0)};
        case 1: return {R(0), R(1)};
        case 2: return {R(-1), R(0)};
        default: return {R(0), R(-1)};
    }
}

// x^n by repeated squaring, n >= 0.
template <class R>
inline R powi(R x, long n) {
    R r(1);
    while (n > 0) {
        if (n & 1) r *= x;
        x *= x;
        n >>= 1;
    }
    return r;
}

// Wrap an angle into [-pi, pi).
template <class R>
inline R canonical_angle(R x) {
    const R tp = two_pi<R>();
    R y = x - tp * RealTraits<R>::floor((x + pi_v<R>()) / tp);
    if (y >= pi_v<R>()) y -= tp;  // guards the boundary under rounding
    return y;
}

// Distance between two angles on the circle.
template <class R>
inline R circ_dist(R a, R b) {
    const R tp = two_pi<R>();
    R d = RealTraits<R>::abs(a - b);
    d -= tp * RealTraits<R>::floor(d / tp);
    return d <= tp - d ? d : tp - d;
}

}  // namespace pwf
