// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gauss_legendre.hpp"
#include "monostat/analytic.hpp"
#include "monostat/errors.hpp"
#include "monostat/specfun.hpp"

namespace monostat {
namespace {

constexpr int kClosedFormMaxN = 16;

// n pi / 2^n * sum_v (-1)^v (n + m - 2v)^{n-1} / (v! (n-v)!), for 0 <= m < n.
double closed_form(int n, double m) {
    using ld = long double;
    const ld mm = m;
    const int v_max = static_cast<int>(std::floor((m + n) / 2.0));
    ld sum = 0.0L;
    ld fact_v = 1.0L;
    for (int v = 0; v <= v_max && v <= n; ++v) {
        if (v > 0) fact_v *= v;
        const ld base = n + mm - 2.0L * v;
        if (base <= 0.0L) continue;
        ld fact_nv = 1.0L;
        for (int j = 2; j <= n - v; ++j) fact_nv *= j;
        const ld term = std::pow(base, n - 1) / (fact_v * fact_nv);
        sum += (v % 2 == 0) ? term : -term;
    }
    const ld pi = std::numbers::pi_v<long double>;
    return static_cast<double>(n * pi / std::ldexp(1.0L, n) * sum);
}

double panel_sum(int n, double m, double lo, double hi, int panels) {
    const auto& gl = detail::gl16();
    const double h = (hi - lo) / panels;
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        acc += gl.integrate(
            [&](double y) { return std::pow(specfun::sinc(y), n) * std::cos(m * y); },
            lo + p * h, lo + (p + 1) * h);
    }
    return acc;
}

// Integral of sinc^n(y) cos(my) over y > 0. Beyond the truncation point the
// integrand is below e^{-40} (main lobe, ln sinc <= -y^2/6) or below
// (3 pi)^{-n} (side lobes).
double quadrature(int n, double m) {
    constexpr double pi = std::numbers::pi;
    const double width = std::sqrt(3.0 / n);
    const double y_main = std::min(pi, std::sqrt(240.0 / n));
    const int main_panels =
        std::max(8, static_cast<int>(std::ceil(y_main / width + m * y_main / 2.0)));
    double acc = panel_sum(n, m, 0.0, y_main, main_panels);
    if (n < 40) {
        const int side_panels = 2 + static_cast<int>(std::ceil(m * pi / 2.0));
        acc += panel_sum(n, m, pi, 2.0 * pi, side_panels);
        acc += panel_sum(n, m, 2.0 * pi, 3.0 * pi, side_panels);
    }
    // The exact value is a probability density, hence nonnegative.
    return std::max(acc, 0.0);
}

}  // namespace

double sinc_power_coeff(int n, double m) {
    if (n < 1) throw DomainError("sinc_power_coeff: n must be >= 1");
    if (!std::isfinite(m)) throw DomainError("sinc_power_coeff: m must be finite");
    m = std::abs(m);
    constexpr double pi = std::numbers::pi;
    if (n == 1) {
        if (m < 1.0) return pi / 2.0;
        return m == 1.0 ? pi / 4.0 : 0.0;
    }
    if (m >= n) return 0.0;
    if (n <= kClosedFormMaxN) return closed_form(n, m);
    return quadrature(n, m);
}

}  // namespace monostat
