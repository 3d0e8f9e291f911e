#include "pwf/bump.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "pwf/quadrature.hpp"

namespace pwf {

namespace {

using Q = float128;

Q mollifier(Q y) {
    const Q y2 = y * y;
    if (y2 >= Q(1)) return Q(0);
    return RealTraits<Q>::exp(Q(-1) / (Q(1) - y2));
}

// Integral of f over [0, 1] with the deterministic layout: uniform panels on
// [0, 63/64] sized to the oscillation w, then dyadic panels toward the flat
// endpoint y = 1. Node counts are pure functions of w.
template <class F>
Q integrate_half(F&& f, Q w) {
    const Q body_end = Q(1) - Q(1) / Q(64);
    const double wd = std::abs(RealTraits<Q>::to_double(w));
    const long body_panels = 4 + static_cast<long>(wd / 8.0);
    Q total = integrate_panels(f, Q(0), body_end, body_panels);
    Q lo = body_end;
    for (int j = 6; j <= 16; ++j) {
        const Q hi = Q(1) - RealTraits<Q>::pow(Q(2), Q(-(j + 1)));
        const long n = 1 + static_cast<long>(wd * RealTraits<Q>::to_double(hi - lo) / 8.0);
        total += integrate_panels(f, lo, hi, n);
        lo = hi;
    }
    // Remaining sliver: the mollifier there is below 1e-14000, i.e. zero.
    return total;
}

Q mass_half_q() {
    static const Q value = integrate_half([](Q y) { return mollifier(y); }, Q(0));
    return value;
}

}  // namespace

std::pair<double, double> bump_params(double E, double t) {
    if (!(2 * E > t) || !(t > 0)) throw ConfigError("bump_params: need 2E > t > 0");
    return {(E - t / 2) / 3.0, 2.0 * (E + t) / 3.0};
}

BumpSpec make_bump(double xi, double E, double t) {
    const auto [s_star, r_star] = bump_params(E, t);
    BumpSpec spec;
    spec.xi = xi;
    spec.E = E;
    spec.t = t;
    spec.s = 0.999 * s_star;
    spec.r = r_star;
    spec.delta = mollifier_mass();
    spec.validate();
    return spec;
}

double mollifier_mass() {
    static const double value = 2.0 * RealTraits<Q>::to_double(mass_half_q());
    return value;
}

float128 mollifier_fc_q(float128 w) {
    if (w < Q(0)) w = -w;  // even
    const Q integral = integrate_half(
        [w](Q y) { return mollifier(y) * RealTraits<Q>::cos(w * y); }, w);
    return Q(2) * integral / (two_pi<Q>() * Q(2) * mass_half_q());
}

double mollifier_fc(double w) {
    return RealTraits<Q>::to_double(mollifier_fc_q(Q(w)));
}

std::complex<float128> bump_fc_q(const BumpSpec& spec, long k) {
    spec.validate();
    if (k == 0) return {Q(spec.r) / two_pi<Q>(), Q(0)};
    const Q kk = Q(static_cast<double>(k));
    const Q mf = mollifier_fc_q(kk * Q(spec.s));
    const std::complex<Q> phase = cis<Q>(-kk * (Q(spec.r) / Q(2) + Q(spec.xi)));
    const std::complex<Q> box = (cis<Q>(kk * Q(spec.r)) - std::complex<Q>(1)) / kk;
    return std::complex<Q>(0, -1) * phase * box * mf;
}

namespace {

// The mollifier factor depends on |k|s only; tables are cached per scale so
// repeated sweeps over the same bump geometry pay for the quadratures once.
std::shared_ptr<const std::vector<double>> mollifier_table(const BumpSpec& spec, long kabs_max) {
    static std::map<double, std::shared_ptr<const std::vector<double>>> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(spec.s);
        if (it != cache.end() && static_cast<long>(it->second->size()) > kabs_max)
            return it->second;
    }
    auto tab = std::make_shared<std::vector<double>>(kabs_max + 1);
    const Q s(spec.s);
#pragma omp parallel for schedule(dynamic, 16)
    for (long k = 0; k <= kabs_max; ++k)
        (*tab)[k] = RealTraits<Q>::to_double(mollifier_fc_q(Q(static_cast<double>(k)) * s));
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[spec.s];
    if (!slot || slot->size() < tab->size()) slot = tab;
    return slot;
}

std::vector<double> mollifier_table_serial(const BumpSpec& spec, long kabs_max) {
    std::vector<double> tab(kabs_max + 1);
    const Q s(spec.s);
    for (long k = 0; k <= kabs_max; ++k)
        tab[k] = RealTraits<Q>::to_double(mollifier_fc_q(Q(static_cast<double>(k)) * s));
    return tab;
}

std::vector<std::complex<double>> assemble_range(const BumpSpec& spec, long kmin, long kmax,
                                                 const std::vector<double>& tab) {
    std::vector<std::complex<double>> out(kmax - kmin + 1);
    for (long k = kmin; k <= kmax; ++k) {
        if (k == 0) {
            out[k - kmin] = {spec.r / two_pi<double>(), 0.0};
            continue;
        }
        const double kk = double(k);
        const double mf = tab[std::labs(k)];
        const std::complex<double> phase = cis<double>(-kk * (spec.r / 2 + spec.xi));
        const std::complex<double> box = (cis<double>(kk * spec.r) - std::complex<double>(1)) / kk;
        out[k - kmin] = std::complex<double>(0, -1) * phase * box * mf;
    }
    return out;
}

}  // namespace

std::vector<std::complex<double>> bump_fc_range(const BumpSpec& spec, long kmin, long kmax) {
    spec.validate();
    if (kmax < kmin) throw ConfigError("bump_fc_range: empty range");
    const long kabs = std::max(std::labs(kmin), std::labs(kmax));
    return assemble_range(spec, kmin, kmax, *mollifier_table(spec, kabs));
}

std::vector<std::complex<double>> bump_fc_range_serial(const BumpSpec& spec, long kmin, long kmax) {
    spec.validate();
    if (kmax < kmin) throw ConfigError("bump_fc_range: empty range");
    const long kabs = std::max(std::labs(kmin), std::labs(kmax));
    return assemble_range(spec, kmin, kmax, mollifier_table_serial(spec, kabs));
}

}  // namespace pwf
