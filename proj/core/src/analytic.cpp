// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#include "monostat/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "monostat/errors.hpp"
#include "monostat/specfun.hpp"
#include "series_support.hpp"
#include "summation.hpp"

namespace monostat {
namespace {

constexpr double kPi = std::numbers::pi;

bool nonneg_finite(double v) { return std::isfinite(v) && v >= 0.0; }

double sq(double v) { return v * v; }

// Forward recurrence for 1F1(-k; b; z), advanced one k at a time.
class KummerSequence {
public:
    KummerSequence(double b, double z) : b_(b), z_(z) {}

    double next() {
        double out;
        if (k_ == 0) {
            out = 1.0;
        } else if (k_ == 1) {
            out = 1.0 - z_ / b_;
        } else {
            const double km1 = static_cast<double>(k_ - 1);
            out = ((2.0 * km1 + b_ - z_) * cur_ - km1 * prev_) / (b_ + km1);
        }
        prev_ = cur_;
        cur_ = out;
        ++k_;
        return out;
    }

private:
    double b_;
    double z_;
    double prev_ = 0.0;
    double cur_ = 0.0;
    std::size_t k_ = 0;
};

}  // namespace

void SignalPowers::validate() const {
    if (!nonneg_finite(p_carrier) || !nonneg_finite(p_gaussian_signal) ||
        !nonneg_finite(p_delta_noise) || !std::isfinite(p_sum_noise)) {
        throw ConfigError("SignalPowers: powers must be finite and nonnegative");
    }
    if (!(p_sum_noise > 0.0)) throw ConfigError("SignalPowers: p_sum_noise must be positive");
}

void SweepPoint::validate() const {
    if (!(snr > 0.0) || !std::isfinite(snr)) throw ConfigError("SweepPoint: snr must be positive");
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("SweepPoint: lambda must be in [0, 1]");
}

SignalPowers SweepPoint::to_powers() const {
    validate();
    SignalPowers p;
    p.p_sum_noise = 1.0;
    p.p_gaussian_signal = lambda * snr;
    p.p_carrier = (1.0 - lambda) * snr;
    p.p_delta_noise = 1.0;
    return p;
}

SweepPoint SweepPoint::from_powers(const SignalPowers& p) {
    p.validate();
    const double signal = p.p_gaussian_signal + p.p_carrier;
    SweepPoint s;
    s.snr = signal / p.p_sum_noise;
    s.lambda = signal > 0.0 ? p.p_gaussian_signal / signal : 0.0;
    return s;
}

void TrackingGeometry::validate() const {
    if (!nonneg_finite(theta_s)) throw ConfigError("TrackingGeometry: theta_s must be >= 0");
    if (!std::isfinite(phi_s) || !std::isfinite(k_f)) {
        throw ConfigError("TrackingGeometry: phi_s and k_f must be finite");
    }
}

cplx TrackingGeometry::noiseless_ratio() const { return std::polar(theta_s * k_f, phi_s); }

void SeriesTruncation::validate() const {
    if (!(tail_tol > 0.0) || !std::isfinite(tail_tol)) {
        throw ConfigError("SeriesTruncation: tail_tol must be positive");
    }
}

void FlatSpectrumSetup::validate() const {
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
        throw ConfigError("FlatSpectrumSetup: bandwidth must be positive");
    }
    if (!nonneg_finite(carrier_offset)) {
        throw ConfigError("FlatSpectrumSetup: carrier_offset must be >= 0");
    }
}

double reduction_factor(const SignalPowers& powers) {
    powers.validate();
    const double p = powers.total_gaussian();
    return 1.0 - std::exp(-powers.p_carrier / p) * (powers.p_sum_noise / p);
}

cplx mean_ratio(const TrackingGeometry& geometry, const SignalPowers& powers) {
    geometry.validate();
    return reduction_factor(powers) * geometry.noiseless_ratio();
}

cplx rss_gaussian(const CorrelationCoefficient& r, double total_gaussian) {
    if (!(total_gaussian > 0.0)) throw DomainError("rss_gaussian: total power must be positive");
    const double mag = r.magnitude();
    if (!(mag < 1.0)) throw DivergenceError("divergence: |r| >= 1");
    const double x = mag * mag;
    // -ln(1 - x) / x -> 1 as x -> 0, so the value tends to conj(r) / P.
    const double ratio = x > 0.0 ? -std::log1p(-x) / x : 1.0;
    return std::conj(r.value()) * (ratio / total_gaussian);
}

SeriesResult<cplx> rss_general(const CorrelationCoefficient& r, const SignalPowers& powers,
                               const SeriesTruncation& trunc) {
    powers.validate();
    trunc.validate();
    const double mag = r.magnitude();
    if (!(mag < 1.0)) throw DivergenceError("divergence: |r| >= 1");
    const double p_total = powers.total_gaussian();
    const double a = powers.carrier_ratio();

    SeriesResult<cplx> out;
    if (mag == 0.0) {
        // Only the k = 0 term of the m = 0 series survives (0^0 = 1).
        out.value = a > 0.0 ? sq(-std::expm1(-a)) / (a * p_total) : 0.0;
        return out;
    }

    const double x = mag * mag;
    const double ln_x = std::log(x);
    const double ln_mag = std::log(mag);
    const double ln_a = a > 0.0 ? std::log(a) : -std::numeric_limits<double>::infinity();
    const double phi = r.phase();
    const std::size_t k_cap = trunc.k_max;
    const double tol = trunc.tail_tol;

    std::vector<cplx> per_k(k_cap + 1);
    detail::Neumaier total_re;
    detail::Neumaier total_im;
    double abs_total = 0.0;
    double prev_outer = std::numeric_limits<double>::infinity();
    bool hit_k_cap = false;
    bool outer_converged = false;
    std::size_t k_used = 0;
    std::size_t n = 0;

    // Inner sum over k of exp(ln_coef(k)) * f(k)^2, with |f(k)|^2 bounded by
    // e^{-a} for k >= 1. Stops once the geometric bound on the rest is below
    // tol relative to the larger of the running totals.
    auto inner = [&](double ln_pref, cplx phase, auto&& ln_coef, auto&& ratio_bound,
                     auto&& fsq) -> double {
        detail::Neumaier s;
        for (std::size_t k = 0; k <= k_cap; ++k) {
            const double ln_w = ln_pref + ln_coef(k) + static_cast<double>(k) * ln_x;
            const double t = std::exp(ln_w) * fsq(k);
            s.add(t);
            per_k[k] += phase * t;
            k_used = std::max(k_used, k);
            const double q = x * ratio_bound(k);
            if (q < 1.0) {
                const double rest = std::exp(ln_w + a) * q / (1.0 - q);
                if (rest <= tol * std::max(abs_total, s.value())) return s.value();
            }
        }
        hit_k_cap = true;
        return s.value();
    };

    for (n = 0; n <= trunc.n_max; ++n) {
        const double dn = static_cast<double>(n);
        double outer = 0.0;

        // conj(r)^{n+1} a^n / (n!)^2 * sum_k x^k (n+k)! / (k! (n+1+k)) F_k^2
        {
            const double ln_pref =
                (n > 0 ? dn * ln_a : 0.0) - 2.0 * detail::ln_factorial(n) + (dn + 1.0) * ln_mag;
            const cplx phase = std::polar(1.0, -(dn + 1.0) * phi);
            KummerSequence kummer(dn + 1.0, a);
            const double s = inner(
                ln_pref, phase,
                [&](std::size_t k) {
                    return detail::ln_factorial(n + k) - detail::ln_factorial(k) -
                           std::log(dn + 1.0 + k) - 2.0 * a;
                },
                [&](std::size_t k) {
                    // Upper bound on the term ratio that decreases in k.
                    const double dk = static_cast<double>(k);
                    return (dn + 1.0 + dk) / (dk + 1.0);
                },
                [&](std::size_t) { return sq(kummer.next()); });
            total_re.add((phase * s).real());
            total_im.add((phase * s).imag());
            outer += s;
        }

        // r^m a^{m+1} / ((m+1)!)^2 * sum_k x^k (m+k)! / k! G_k^2, m = n
        if (a > 0.0) {
            const double ln_pref =
                (dn + 1.0) * ln_a - 2.0 * detail::ln_factorial(n + 1) + dn * ln_mag;
            const cplx phase = std::polar(1.0, dn * phi);
            const double g0 = specfun::hyp1f1({1.0, dn + 2.0, a});
            KummerSequence kummer(dn + 2.0, a);
            const double s = inner(
                ln_pref, phase,
                [&](std::size_t k) {
                    return detail::ln_factorial(n + k) - detail::ln_factorial(k) - 2.0 * a;
                },
                [&](std::size_t k) {
                    const double dk = static_cast<double>(k);
                    return (dn + 1.0 + dk) / (dk + 1.0);
                },
                [&](std::size_t k) { return k == 0 ? sq(g0) : sq(kummer.next()); });
            total_re.add((phase * s).real());
            total_im.add((phase * s).imag());
            outer += s;
        }

        abs_total += outer;
        if (a == 0.0) {
            // a^n vanishes for n >= 1 and there is no second series.
            outer_converged = true;
            break;
        }
        if (n >= 1 && outer <= tol * abs_total && prev_outer <= tol * abs_total) {
            outer_converged = true;
            break;
        }
        prev_outer = outer;
    }

    cplx value(total_re.value(), total_im.value());
    cplx remainder{};
    bool tail_ok = !hit_k_cap;
    if (hit_k_cap && trunc.asymptotic_tail && k_cap >= detail::kMinTailK) {
        // k-totals behave as x^k (k+1)^{-p} times a slowly varying factor:
        // p = 1 exactly without a carrier, p = 3/2 asymptotically with one.
        const double p = a == 0.0 ? 1.0 : 1.5;
        remainder = detail::geometric_power_tail(per_k, x, p);
        tail_ok = true;
    }
    out.value = (value + remainder) / p_total;
    out.remainder = remainder / p_total;
    out.converged = tail_ok && outer_converged;
    out.k_used = k_used;
    out.n_used = std::min(n, trunc.n_max);
    return out;
}

SeriesResult<double> chi(double a, double b, const SeriesTruncation& trunc) {
    if (!nonneg_finite(a) || !nonneg_finite(b)) throw DomainError("chi: a and b must be >= 0");
    trunc.validate();
    const std::size_t k_cap = trunc.k_max;
    const double tol = trunc.tail_tol;
    const double ln_a = a > 0.0 ? std::log(a) : -std::numeric_limits<double>::infinity();

    std::vector<double> per_k(k_cap + 1, 0.0);
    double total = 0.0;
    double prev_outer = std::numeric_limits<double>::infinity();
    bool outer_converged = false;
    std::size_t n = 0;

    for (n = 0; n <= trunc.n_max; ++n) {
        const double dn = static_cast<double>(n);
        detail::Neumaier outer_sum;

        {
            const double ln_pref = (n > 0 ? dn * ln_a : 0.0) - 2.0 * detail::ln_factorial(n);
            KummerSequence kummer(dn + 1.0, a);
            for (std::size_t k = 0; k <= k_cap; ++k) {
                const double m_k = kummer.next();
                const double w = std::exp(ln_pref + detail::ln_factorial(n + k) -
                                          detail::ln_factorial(k) - std::log(dn + 1.0 + k) -
                                          2.0 * a) *
                                 m_k * m_k;
                // c_N(m) <= pi/2; skip coefficients that cannot matter.
                if (w * kPi <= 1e-30 * (total + outer_sum.value())) continue;
                const double t =
                    2.0 / kPi * w * sinc_power_coeff(static_cast<int>(2 * k + n + 2), dn * b);
                per_k[k] += t;
                outer_sum.add(t);
            }
        }

        if (a > 0.0) {
            const double ln_pref = (dn + 1.0) * ln_a - 2.0 * detail::ln_factorial(n + 1);
            const double g0 = specfun::hyp1f1({1.0, dn + 2.0, a});
            KummerSequence kummer(dn + 2.0, a);
            for (std::size_t k = 0; k <= k_cap; ++k) {
                const double g = k == 0 ? g0 : kummer.next();
                const double w = std::exp(ln_pref + detail::ln_factorial(n + k) -
                                          detail::ln_factorial(k) - 2.0 * a) *
                                 g * g;
                if (w * kPi <= 1e-30 * (total + outer_sum.value())) continue;
                const double t = 2.0 / kPi * w *
                                 sinc_power_coeff(static_cast<int>(2 * k + n + 1), (dn + 1.0) * b);
                per_k[k] += t;
                outer_sum.add(t);
            }
        }

        const double outer = outer_sum.value();
        total += outer;
        if (a == 0.0) {
            outer_converged = true;
            break;
        }
        if (n >= 1 && outer <= tol * total && prev_outer <= tol * total) {
            outer_converged = true;
            break;
        }
        prev_outer = outer;
    }

    detail::Neumaier explicit_sum;
    for (double t : per_k) explicit_sum.add(t);

    SeriesResult<double> out;
    out.k_used = k_cap;
    out.n_used = std::min(n, trunc.n_max);
    double remainder = 0.0;
    bool tail_ok = false;
    if (trunc.asymptotic_tail && k_cap >= detail::kMinTailK) {
        remainder = detail::chi_tail(per_k, a, b);
        tail_ok = true;
    } else {
        tail_ok = per_k.back() <= tol * explicit_sum.value();
    }
    out.value = explicit_sum.value() + remainder;
    out.remainder = remainder;
    out.converged = tail_ok && outer_converged;
    return out;
}

double sdm0_flat(const SignalPowers& powers, const FlatSpectrumSetup& setup,
                 const SeriesTruncation& trunc) {
    powers.validate();
    setup.validate();
    if (powers.p_delta_noise == 0.0) return 0.0;
    const double p = powers.total_gaussian();
    const auto c = chi(powers.p_carrier / p, setup.b(), trunc);
    if (!c.converged) throw ConvergenceError("sdm0_flat: chi series did not converge");
    return powers.p_delta_noise / (setup.bandwidth * p) * c.value;
}

}  // namespace monostat
