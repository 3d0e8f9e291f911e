// Composite Gauss-Legendre quadrature with deterministic panel layouts.
// Panel counts are pure functions of the arguments, so results are
// bit-reproducible run to run on the same platform.
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "pwf/real.hpp"

namespace pwf {

namespace detail {
// 16-point Gauss-Legendre rule on [-1, 1], 37 significant digits.
inline constexpr std::array<std::pair<const char*, const char*>, 16> kGL16 = {{
    {"-0.9894009349916499325961541734503326274", "0.02715245941175409485178057245601810351"},
    {"-0.9445750230732325760779884155346083451", "0.06225352393864789286284383699437769428"},
    {"-0.8656312023878317438804678977123931324", "0.09515851168249278480992510760224622636"},
    {"-0.7554044083550030338951011948474422684", "0.1246289712555338720524762821920164201"},
    {"-0.6178762444026437484466717640487910190", "0.1495959888165767320815017305474785490"},
    {"-0.4580167776572273863424194429835775735", "0.1691565193950025381893120790303599622"},
    {"-0.2816035507792589132304605014604961065", "0.1826034150449235888667636679692199394"},
    {"-0.09501250983763744018531933542495806313", "0.1894506104550684962853967232082831051"},
    {"0.09501250983763744018531933542495806313", "0.1894506104550684962853967232082831051"},
    {"0.2816035507792589132304605014604961065", "0.1826034150449235888667636679692199394"},
    {"0.4580167776572273863424194429835775735", "0.1691565193950025381893120790303599622"},
    {"0.6178762444026437484466717640487910190", "0.1495959888165767320815017305474785490"},
    {"0.7554044083550030338951011948474422684", "0.1246289712555338720524762821920164201"},
    {"0.8656312023878317438804678977123931324", "0.09515851168249278480992510760224622636"},
    {"0.9445750230732325760779884155346083451", "0.06225352393864789286284383699437769427"},
    {"0.9894009349916499325961541734503326274", "0.02715245941175409485178057245601810351"},
}};
}  // namespace detail

template <class R>
struct GaussLegendre16 {
    std::array<R, 16> x, w;
    GaussLegendre16() {
        for (std::size_t i = 0; i < 16; ++i) {
            x[i] = RealTraits<R>::from_string(detail::kGL16[i].first);
            w[i] = RealTraits<R>::from_string(detail::kGL16[i].second);
        }
    }
    static const GaussLegendre16& instance() {
        static const GaussLegendre16 rule;
        return rule;
    }
};

// Single GL16 panel over [a, b].
template <class R, class F>
R gl16_panel(F&& f, R a, R b) {
    const auto& rule = GaussLegendre16<R>::instance();
    const R half = (b - a) / R(2), mid = (a + b) / R(2);
    R s(0);
    for (std::size_t i = 0; i < 16; ++i) s += rule.w[i] * f(mid + half * rule.x[i]);
    return s * half;
}

// Composite rule with n equal panels.
template <class R, class F>
R integrate_panels(F&& f, R a, R b, long n) {
    if (n < 1) n = 1;
    R s(0);
    const R h = (b - a) / R(n);
    for (long p = 0; p < n; ++p) s += gl16_panel(f, a + h * R(p), a + h * R(p + 1));
    return s;
}

// Composite rule resolving an e^{i w x}-type oscillation: the panel count
// keeps the phase advance per panel at or below `phase_per_panel` radians.
template <class R, class F>
R integrate_oscillatory(F&& f, R a, R b, R w, long min_panels = 4, double phase_per_panel = 8.0) {
    R span = RealTraits<R>::abs(w * (b - a));
    long n = min_panels + static_cast<long>(RealTraits<R>::to_double(span) / phase_per_panel);
    return integrate_panels(f, a, b, n);
}

}  // namespace pwf
