// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace monostat::detail {

/// Asymptotic k-tails are only fitted when at least this many terms exist.
inline constexpr std::size_t kMinTailK = 50;

/// ln k!, tabulated from specfun::ln_gamma.
double ln_factorial(std::size_t k);

/// Hurwitz zeta sum_{j>=0} (q + j)^{-s}, s > 1, q > 0.
double hurwitz_zeta(double s, double q);

/// e^{-z} I_0(z) for z >= 0.
double bessel_i0_scaled(double z);

/// Sum over j > K of terms modelled as T_K x^{j-K} ((K+1)/(j+1))^p, with the
/// level T_K taken as the average of the normalized terms over k in [K/2, K].
std::complex<double> geometric_power_tail(const std::vector<std::complex<double>>& per_k,
                                          double x, double p);

/// Sum over k > K of the chi k-totals, modelled as
/// C (k+1)^{-3/2} (1 + d (k+1)^{-1/2}) with the closed-form leading constant C
/// and d fitted over k in [K/2, K].
double chi_tail(const std::vector<double>& per_k, double a, double b);

/// Leading constant C(a, b) of the chi k-totals.
double chi_tail_constant(double a, double b);

}  // namespace monostat::detail
