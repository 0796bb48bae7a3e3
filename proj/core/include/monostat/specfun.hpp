// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#pragma once

#include <cstddef>
#include <vector>

namespace monostat::specfun {

/// ln Gamma(x) for x > 0. Throws DomainError otherwise.
///
/// Relative accuracy is close to machine precision on (0, 1000], including
/// the neighbourhoods of the zeros at x = 1 and x = 2, which are evaluated
/// from a Taylor expansion about 1 and 2 rather than by subtraction.
double ln_gamma(double x);

struct Hyp1F1Args {
    double a_param = 0.0;
    double b_param = 1.0;
    double x = 0.0;
};

/// Confluent hypergeometric function 1F1(a; b; x) for real arguments, b > 0.
///
/// When a - b is a non-negative integer k and x < 0 the Kummer transform
/// reduces the evaluation to the terminating polynomial 1F1(-k; b; -x),
/// generated by a three-term forward recurrence in k. Other parameter
/// patterns fall back to the power series (Kummer-transformed for x < 0),
/// capped at 10000 terms with a relative tail tolerance of 1e-16; hitting the
/// cap throws ConvergenceError.
double hyp1f1(const Hyp1F1Args& args);

/// Values 1F1(-k; b; z) for k = 0..k_max, by forward recurrence.
/// Requires b > 0. These are the normalized Laguerre polynomials
/// k! / (b)_k * L_k^{(b-1)}(z).
std::vector<double> kummer_polynomials(std::size_t k_max, double b, double z);

/// Direct 1F1 power series with the fallback iteration cap; exposed for the
/// non-integer parameter patterns and for cross-checks.
double hyp1f1_series(double a, double b, double x);

/// sin(y)/y with sinc(0) = 1.
double sinc(double y);

}  // namespace monostat::specfun
