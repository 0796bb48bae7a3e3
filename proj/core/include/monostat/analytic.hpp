// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <optional>

namespace monostat {

using cplx = std::complex<double>;

/// Linear powers of the residual carrier (P_c), the Gaussian signal (P_x),
/// the sum-channel noise (P_Sigma) and the difference-channel noise (P_Delta).
struct SignalPowers {
    double p_carrier = 0.0;
    double p_gaussian_signal = 0.0;
    double p_sum_noise = 1.0;
    double p_delta_noise = 1.0;

    /// P = P_x + P_Sigma.
    double total_gaussian() const { return p_gaussian_signal + p_sum_noise; }
    /// a = P_c / P.
    double carrier_ratio() const { return p_carrier / total_gaussian(); }
    /// Throws ConfigError on negative, non-finite, or zero P_Sigma.
    void validate() const;
};

/// Sweep coordinates: snr = (P_x + P_c) / P_Sigma and
/// lambda = P_x / (P_x + P_c).
struct SweepPoint {
    double snr = 1.0;
    double lambda = 0.0;

    void validate() const;
    /// Powers with P_Sigma = 1 and P_Delta = 1.
    SignalPowers to_powers() const;
    static SweepPoint from_powers(const SignalPowers& p);
};

struct TrackingGeometry {
    double theta_s = 0.0;  // off-boresight angle, rad; linear model assumes it is small
    double phi_s = 0.0;
    double k_f = 1.0;

    void validate() const;
    /// Noiseless ratio theta_s K_F e^{i phi_s}.
    cplx noiseless_ratio() const;
};

/// r = rho - i mu, the normalized correlation of the Gaussian part of the
/// sum channel. |r| <= 1.
struct CorrelationCoefficient {
    double rho = 0.0;
    double mu = 0.0;

    static CorrelationCoefficient from_complex(cplx r) { return {r.real(), -r.imag()}; }
    cplx value() const { return {rho, -mu}; }
    double magnitude() const { return std::hypot(rho, mu); }
    double phase() const { return std::atan2(-mu, rho); }
};

/// Bounds for the double series. Sums over n (and m) stop adaptively once two
/// consecutive outer terms fall below tail_tol relative to the total; n_max
/// is only a hard cap. When the inner k sum reaches k_max without meeting the
/// tolerance and asymptotic_tail is set, the remaining k range is added from
/// an asymptotic model fitted to the last half of the computed terms.
struct SeriesTruncation {
    std::size_t n_max = 400;
    std::size_t k_max = 400;
    double tail_tol = 1e-12;
    bool asymptotic_tail = true;

    void validate() const;
};

/// Flat Gaussian spectrum of width W centred at 0 Hz with a carrier at f_c.
struct FlatSpectrumSetup {
    double bandwidth = 1.0;
    double carrier_offset = 0.0;

    void validate() const;
    /// b = f_c / (W/2).
    double b() const { return carrier_offset / (0.5 * bandwidth); }
};

template <typename T>
struct SeriesResult {
    T value{};
    /// False when the tolerance was not met and no tail model was applied,
    /// or when the outer index hit n_max.
    bool converged = true;
    /// Portion of value supplied by the asymptotic k-tail model.
    T remainder{};
    std::size_t k_used = 0;
    std::size_t n_used = 0;
};

double reduction_factor(const SignalPowers& powers);

cplx mean_ratio(const TrackingGeometry& geometry, const SignalPowers& powers);

/// c_n(m) = 1/2 * integral of (sin y / y)^n e^{imy} over the real line.
/// Finite-sum closed form for n <= 16; above that the alternating sum loses
/// too many digits in double and a Gauss-Legendre quadrature is used.
double sinc_power_coeff(int n, double m);

/// Autocorrelation of 1/S for a purely Gaussian sum channel. Throws
/// DivergenceError for |r| >= 1. Returns exactly 0 at r = 0.
cplx rss_gaussian(const CorrelationCoefficient& r, double total_gaussian);

/// Autocorrelation of 1/S with a residual carrier, by the double series.
SeriesResult<cplx> rss_general(const CorrelationCoefficient& r, const SignalPowers& powers,
                               const SeriesTruncation& trunc = {});

/// Same quantity as rss_general by a different route: the carrier phase and
/// the value of S at the earlier instant are integrated numerically, while the
/// expectation over the later instant uses the closed form of E[1/(c + z)]
/// for circular Gaussian z. Accurate for every |r| < 1, including the
/// neighbourhood of 1 where the series needs very many k terms.
cplx rss_conditional(const CorrelationCoefficient& r, const SignalPowers& powers);

/// Dimensionless zero-frequency density for flat spectra; a = P_c/P, b = f_c/(W/2).
SeriesResult<double> chi(double a, double b, const SeriesTruncation& trunc = {});

/// P_Delta / (W P) * chi(a, b), in 1/Hz.
double sdm0_flat(const SignalPowers& powers, const FlatSpectrumSetup& setup,
                 const SeriesTruncation& trunc = {});

struct QuadratureConfig {
    /// Characteristic correlation time of r(tau); sets panel widths. Required.
    double tau_scale = 0.0;
    /// |r| above which rss_conditional replaces the series.
    double knot_r = 0.9;
    /// Integration stops once the integrand envelope stays below this fraction
    /// of its value at tau = 0 over a full window of panels.
    double rel_cutoff = 1e-6;
    /// Hard limit on the integration range, in units of tau_scale.
    double max_span = 2000.0;
    /// Panel width far from the origin, in units of tau_scale.
    double panel_width = 0.5;
    /// Integral of rdelta over the real line (S_Delta(0)). When present and
    /// P_c > 0, the constant large-lag limit of R_ss is split off and
    /// integrated exactly, which removes the slowly decaying part of the
    /// integrand.
    std::optional<double> delta_psd_at_zero;
    /// Allowed |Im| of the full-line integral relative to its real part.
    double imag_tol = 1e-6;

    void validate() const;
};

struct Sdm0NumericResult {
    double value = 0.0;
    double imag_residual = 0.0;
    double cutoff = 0.0;
};

/// Integral of R_Delta(tau) R_ss(tau) over the real line. Both half-lines are
/// integrated; the imaginary part of the sum is the Hermitian-symmetry
/// residual and must stay below quad.imag_tol. The logarithmic singularity of
/// R_ss at tau = 0 is handled by an exponential change of variable and an
/// analytic log-fit below the smallest node.
Sdm0NumericResult sdm0_numeric(const std::function<CorrelationCoefficient(double)>& r_of_tau,
                               const std::function<cplx(double)>& rdelta_of_tau,
                               const SignalPowers& powers, const SeriesTruncation& trunc,
                               const QuadratureConfig& quad);

}  // namespace monostat
