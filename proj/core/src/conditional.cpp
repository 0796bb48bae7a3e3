// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gauss_legendre.hpp"
#include "monostat/analytic.hpp"
#include "monostat/errors.hpp"

namespace monostat {

// With unit Gaussian power, S1 = A + w and S2 = A + r w + v where w is
// CN(0, 1) and v is CN(0, 1 - |r|^2) independent of w. The carrier phase
// drops out, and E[1/(c + v)] = (1 - e^{-|c|^2/s2}) / c. The remaining
// expectation over w is taken in polar coordinates centred on S1 = 0, so the
// 1/conj(S1) singularity is absorbed by the area element; the radius is
// integrated in log scale to resolve the narrow feature of width ~sqrt(s2).
cplx rss_conditional(const CorrelationCoefficient& r, const SignalPowers& powers) {
    powers.validate();
    const double mag = r.magnitude();
    if (!(mag < 1.0)) throw DivergenceError("divergence: |r| >= 1");
    constexpr double pi = std::numbers::pi;
    constexpr int n_angle = 128;
    constexpr double panel = 0.5;

    const double amp = std::sqrt(powers.carrier_ratio());
    const cplx rc = r.value();
    const double s2 = (1.0 - mag) * (1.0 + mag);
    const double sigma = std::sqrt(s2);
    const cplx c0 = amp * (1.0 - rc);

    const double t_lo = std::log(std::min(sigma, 1.0) * 1e-7);
    const double t_hi = std::log(amp + 9.0);
    const int n_panels = static_cast<int>(std::ceil((t_hi - t_lo) / panel));
    const double h = (t_hi - t_lo) / n_panels;

    std::vector<cplx> dirs(n_angle);
    for (int j = 0; j < n_angle; ++j) dirs[j] = std::polar(1.0, 2.0 * pi * j / n_angle);

    const auto& gl = detail::gl12();
    cplx total{};
    for (int p = 0; p < n_panels; ++p) {
        total += gl.integrate(
            [&](double t) {
                const double rad = std::exp(t);
                cplx ring{};
                for (const cplx& e : dirs) {
                    const cplx u = rad * e;
                    const cplx w = u - amp;
                    const double density = std::exp(-std::norm(w)) / pi;
                    const cplx c = c0 + rc * u;
                    const double c2 = std::norm(c);
                    const cplx g = c2 > 0.0 ? -std::expm1(-c2 / s2) / c : cplx{};
                    ring += density * g * e;
                }
                // Mean over the angle times 2 pi, times d(rad) = rad dt.
                return ring * (2.0 * pi / n_angle) * rad;
            },
            t_lo + p * h, t_lo + (p + 1) * h);
    }
    return total / powers.total_gaussian();
}

}  // namespace monostat
