// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#include "monostat/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "monostat/errors.hpp"

namespace monostat::specfun {
namespace {

constexpr int kZetaTerms = 60;

// zeta(k) - 1 for k = 0..kZetaTerms (entries 0 and 1 unused).
const std::array<double, kZetaTerms + 1>& zeta_minus_one() {
    static const std::array<double, kZetaTerms + 1> table = [] {
        std::array<double, kZetaTerms + 1> t{};
        constexpr double pi = std::numbers::pi;
        t[2] = pi * pi / 6.0 - 1.0;
        t[3] = 0.20205690315959428540;
        t[4] = std::pow(pi, 4) / 90.0 - 1.0;
        t[5] = 0.036927755143369926331;
        t[6] = std::pow(pi, 6) / 945.0 - 1.0;
        t[7] = 0.0083492773819228268397;
        t[8] = std::pow(pi, 8) / 9450.0 - 1.0;
        t[9] = 0.0020083928260822144179;
        for (int k = 10; k <= kZetaTerms; ++k) {
            double s = 0.0;
            for (int n = 80; n >= 2; --n) s += std::pow(static_cast<double>(n), -k);
            t[k] = s;
        }
        return t;
    }();
    return table;
}

// Sum_{k>=2} (-1)^k (zeta(k) - 1) z^k / k, |z| <= 0.5.
double zeta_tail_series(double z) {
    const auto& zm1 = zeta_minus_one();
    double term_pow = -z;
    double sum = 0.0;
    for (int k = 2; k <= kZetaTerms; ++k) {
        term_pow *= -z;  // (-z)^k
        const double t = zm1[k] * term_pow / k;
        sum += t;
        if (std::abs(t) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// ln Gamma(1 + z) for |z| <= 0.5.
double ln_gamma_1p(double z) {
    constexpr double euler_gamma = 0.57721566490153286061;
    return -std::log1p(z) + z * (1.0 - euler_gamma) + zeta_tail_series(z);
}

// ln Gamma(2 + z) for |z| <= 0.5.
double ln_gamma_2p(double z) {
    constexpr double euler_gamma = 0.57721566490153286061;
    return z * (1.0 - euler_gamma) + zeta_tail_series(z);
}

double ln_gamma_stirling(double x) {
    // Bernoulli terms B_{2j} / (2j (2j-1) x^{2j-1}).
    static constexpr std::array<double, 8> c = {
        1.0 / 12.0,        -1.0 / 360.0,       1.0 / 1260.0,   -1.0 / 1680.0,
        1.0 / 1188.0,      -691.0 / 360360.0,  1.0 / 156.0,    -3617.0 / 122400.0};
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double p = inv;
    for (double ci : c) {
        series += ci * p;
        p *= inv2;
    }
    constexpr double half_ln_two_pi = 0.91893853320467274178;
    return (x - 0.5) * std::log(x) - x + half_ln_two_pi + series;
}

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("ln_gamma: argument must be positive and finite");
    }
    if (x >= 15.0) return ln_gamma_stirling(x);
    if (x < 0.5) return ln_gamma(x + 1.0) - std::log(x);
    if (x < 1.5) return ln_gamma_1p(x - 1.0);
    if (x < 2.5) return ln_gamma_2p(x - 2.0);
    // 2.5 <= x < 15: step down into [1.5, 2.5).
    double prod = 1.0;
    double y = x;
    while (y >= 2.5) {
        y -= 1.0;
        prod *= y;
    }
    return ln_gamma_2p(y - 2.0) + std::log(prod);
}

double sinc(double y) {
    if (std::abs(y) < 1e-4) {
        const double y2 = y * y;
        return 1.0 - y2 / 6.0 + y2 * y2 / 120.0;
    }
    return std::sin(y) / y;
}

std::vector<double> kummer_polynomials(std::size_t k_max, double b, double z) {
    if (!(b > 0.0)) throw DomainError("kummer_polynomials: b must be positive");
    std::vector<double> m(k_max + 1);
    m[0] = 1.0;
    if (k_max >= 1) m[1] = 1.0 - z / b;
    for (std::size_t k = 1; k < k_max; ++k) {
        const double kk = static_cast<double>(k);
        m[k + 1] = ((2.0 * kk + b - z) * m[k] - kk * m[k - 1]) / (b + kk);
    }
    return m;
}

double hyp1f1_series(double a, double b, double x) {
    constexpr int max_terms = 10000;
    constexpr double tail_tol = 1e-16;
    double term = 1.0;
    double sum = 1.0;
    for (int j = 0; j < max_terms; ++j) {
        const double aj = a + j;
        if (aj == 0.0) return sum;  // terminating polynomial
        term *= aj / (b + j) * x / (j + 1.0);
        sum += term;
        // Past the largest term the tail is dominated by a geometric series.
        const bool decreasing = std::abs(aj / (b + j) * x / (j + 1.0)) < 1.0;
        if (decreasing && std::abs(term) <= tail_tol * std::abs(sum)) return sum;
    }
    throw ConvergenceError("hyp1f1: power series did not converge within " +
                           std::to_string(max_terms) + " terms");
}

double hyp1f1(const Hyp1F1Args& args) {
    const double a = args.a_param;
    const double b = args.b_param;
    const double x = args.x;
    if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("hyp1f1: b must be positive");
    if (!std::isfinite(a) || !std::isfinite(x)) throw DomainError("hyp1f1: arguments must be finite");
    if (x == 0.0) return 1.0;

    const double diff = a - b;
    if (x < 0.0 && diff >= 0.0 && diff == std::floor(diff) && diff < 1e7) {
        const auto k = static_cast<std::size_t>(diff);
        return std::exp(x) * kummer_polynomials(k, b, -x)[k];
    }
    if (x < 0.0) {
        // Kummer: 1F1(a;b;x) = e^x 1F1(b-a;b;-x); series argument is positive.
        return std::exp(x) * hyp1f1_series(b - a, b, -x);
    }
    return hyp1f1_series(a, b, x);
}

}  // namespace monostat::specfun
