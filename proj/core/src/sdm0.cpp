// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "gauss_legendre.hpp"
#include "monostat/analytic.hpp"
#include "monostat/errors.hpp"

namespace monostat {

void QuadratureConfig::validate() const {
    if (!(tau_scale > 0.0) || !std::isfinite(tau_scale)) {
        throw ConfigError("QuadratureConfig: tau_scale must be positive");
    }
    if (!(knot_r > 0.0 && knot_r < 1.0)) throw ConfigError("QuadratureConfig: knot_r must be in (0, 1)");
    if (!(rel_cutoff > 0.0 && rel_cutoff < 1.0)) {
        throw ConfigError("QuadratureConfig: rel_cutoff must be in (0, 1)");
    }
    if (!(max_span > 1.0) || !(panel_width > 0.0) || !(imag_tol > 0.0)) {
        throw ConfigError("QuadratureConfig: max_span, panel_width and imag_tol must be positive");
    }
    if (delta_psd_at_zero && !std::isfinite(*delta_psd_at_zero)) {
        throw ConfigError("QuadratureConfig: delta_psd_at_zero must be finite");
    }
}

namespace {

struct Node {
    cplx value;
    double envelope;
};

}  // namespace

Sdm0NumericResult sdm0_numeric(const std::function<CorrelationCoefficient(double)>& r_of_tau,
                               const std::function<cplx(double)>& rdelta_of_tau,
                               const SignalPowers& powers, const SeriesTruncation& trunc,
                               const QuadratureConfig& quad) {
    powers.validate();
    trunc.validate();
    quad.validate();

    const double a = powers.carrier_ratio();
    const double p_total = powers.total_gaussian();
    const bool split = a > 0.0 && quad.delta_psd_at_zero.has_value();
    // Large-lag limit of R_ss: the product of the two independent means.
    const double r_inf = a > 0.0 ? std::pow(-std::expm1(-a), 2) / powers.p_carrier : 0.0;
    // Without the split the constant part of R_ss rides on rdelta itself.
    const bool envelope_has_r = a == 0.0 || split;

    auto eval = [&](double tau) -> Node {
        const CorrelationCoefficient r = r_of_tau(tau);
        const double mag = r.magnitude();
        if (!(mag < 1.0)) {
            std::ostringstream msg;
            msg << "divergence: |r(tau)| >= 1 at tau = " << tau;
            throw DivergenceError(msg.str());
        }
        cplx rss;
        if (a == 0.0) {
            rss = rss_gaussian(r, p_total);
        } else if (mag > quad.knot_r) {
            rss = rss_conditional(r, powers);
        } else {
            rss = rss_general(r, powers, trunc).value;
        }
        if (split) rss -= r_inf;
        const cplx rd = rdelta_of_tau(tau);
        const double env = std::abs(rd) * (envelope_has_r ? mag : 1.0);
        return {rd * rss, env};
    };

    const double peak = std::abs(rdelta_of_tau(0.0));
    const double tau0 = quad.tau_scale / 8.0;
    const double tau_min = 1e-5 * quad.tau_scale;
    const double panel = quad.panel_width * quad.tau_scale;
    const double tau_limit = quad.max_span * quad.tau_scale;
    const std::size_t window =
        std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(2.0 / quad.panel_width)));
    const auto& gl = detail::gl16();

    double cutoff = 0.0;
    auto half_line = [&](double sign) -> cplx {
        cplx acc{};

        // Below tau_min: R_ss grows like ln(1/tau); fit alpha ln tau + beta.
        const cplx f1 = eval(sign * tau_min).value;
        const cplx f2 = eval(sign * tau_min / 2.0).value;
        const cplx alpha = (f1 - f2) / std::log(2.0);
        const cplx beta = f1 - alpha * std::log(tau_min);
        acc += tau_min * (alpha * (std::log(tau_min) - 1.0) + beta);

        // (tau_min, tau0] with tau = tau0 e^{-t}.
        const double t_end = std::log(tau0 / tau_min);
        const int near_panels = static_cast<int>(std::ceil(2.0 * t_end));
        const double ht = t_end / near_panels;
        for (int p = 0; p < near_panels; ++p) {
            acc += gl.integrate(
                [&](double t) {
                    const double tau = tau0 * std::exp(-t);
                    return eval(sign * tau).value * tau;
                },
                p * ht, (p + 1) * ht);
        }

        std::deque<double> recent;
        double lo = tau0;
        for (;;) {
            if (lo >= tau_limit) {
                throw ConvergenceError(
                    "sdm0_numeric: integrand did not decay below the cutoff within max_span");
            }
            const double hi = lo + panel;
            double panel_max = 0.0;
            acc += gl.integrate(
                [&](double tau) {
                    const Node nd = eval(sign * tau);
                    panel_max = std::max(panel_max, nd.envelope);
                    return nd.value;
                },
                lo, hi);
            lo = hi;
            recent.push_back(panel_max);
            if (recent.size() > window) recent.pop_front();
            if (recent.size() == window &&
                *std::max_element(recent.begin(), recent.end()) <= quad.rel_cutoff * peak) {
                break;
            }
        }
        cutoff = std::max(cutoff, lo);
        return acc;
    };

    const cplx total = half_line(1.0) + half_line(-1.0);
    Sdm0NumericResult out;
    out.value = total.real() + (split ? r_inf * *quad.delta_psd_at_zero : 0.0);
    out.imag_residual = std::abs(total.imag());
    out.cutoff = cutoff;
    const double scale = std::max(std::abs(total.real()), std::abs(out.value));
    if (out.imag_residual > quad.imag_tol * scale && out.imag_residual > 1e-300) {
        std::ostringstream msg;
        msg << "sdm0_numeric: imaginary residual " << out.imag_residual
            << " exceeds tolerance relative to " << scale;
        throw ConvergenceError(msg.str());
    }
    return out;
}

}  // namespace monostat
