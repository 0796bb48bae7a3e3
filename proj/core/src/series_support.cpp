// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#include "series_support.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "monostat/specfun.hpp"

namespace monostat::detail {

double ln_factorial(std::size_t k) {
    constexpr std::size_t table_size = 4096;
    static const std::vector<double> table = [] {
        std::vector<double> t(table_size);
        for (std::size_t j = 0; j < table_size; ++j) {
            t[j] = specfun::ln_gamma(static_cast<double>(j) + 1.0);
        }
        return t;
    }();
    if (k < table_size) return table[k];
    return specfun::ln_gamma(static_cast<double>(k) + 1.0);
}

double hurwitz_zeta(double s, double q) {
    double sum = 0.0;
    while (q < 20.0) {
        sum += std::pow(q, -s);
        q += 1.0;
    }
    // Euler-Maclaurin with B_2 .. B_10.
    static constexpr std::array<double, 5> bernoulli = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0,
                                                        -1.0 / 30.0, 5.0 / 66.0};
    sum += std::pow(q, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(q, -s);
    double rising = s;               // s (s+1) ... (s+2i-2)
    double qpow = std::pow(q, -s - 1.0);
    double fact = 2.0;               // (2i)!
    for (std::size_t i = 0; i < bernoulli.size(); ++i) {
        sum += bernoulli[i] / fact * rising * qpow;
        const double j = 2.0 * static_cast<double>(i + 1);
        rising *= (s + j - 1.0) * (s + j);
        qpow /= q * q;
        fact *= (j + 1.0) * (j + 2.0);
    }
    return sum;
}

double bessel_i0_scaled(double z) {
    if (z < 600.0) return std::cyl_bessel_i(0.0, z) * std::exp(-z);
    const double inv = 1.0 / (8.0 * z);
    return (1.0 + inv * (1.0 + 4.5 * inv * (1.0 + 25.0 / 3.0 * inv))) /
           std::sqrt(2.0 * std::numbers::pi * z);
}

std::complex<double> geometric_power_tail(const std::vector<std::complex<double>>& per_k,
                                          double x, double p) {
    const std::size_t k_end = per_k.size() - 1;
    const double kp1 = static_cast<double>(k_end) + 1.0;
    std::complex<double> level{};
    std::size_t count = 0;
    for (std::size_t j = k_end / 2; j <= k_end; ++j) {
        const double scale = std::pow(x, static_cast<double>(k_end - j)) *
                             std::pow((static_cast<double>(j) + 1.0) / kp1, p);
        level += per_k[j] * scale;
        ++count;
    }
    level /= static_cast<double>(count);

    double weight = 0.0;
    double term = 1.0;
    std::size_t j = 1;
    constexpr std::size_t max_terms = 10'000'000;
    for (; j <= max_terms; ++j) {
        term = std::pow(x, static_cast<double>(j)) * std::pow(kp1 / (kp1 + j), p);
        weight += term;
        if (term <= 1e-17 * weight) break;
    }
    if (j > max_terms) {
        // Integral estimate of what is left.
        weight += term / (-std::log(x) + p / (kp1 + static_cast<double>(max_terms)));
    }
    return level * weight;
}

double chi_tail_constant(double a, double b) {
    const double z = 1.5 * a * b * b;
    return std::sqrt(3.0 * std::numbers::pi) / std::numbers::pi * std::exp(-a) *
           bessel_i0_scaled(z);
}

double chi_tail(const std::vector<double>& per_k, double a, double b) {
    const std::size_t k_end = per_k.size() - 1;
    const double c = chi_tail_constant(a, b);
    const double first_missing = static_cast<double>(k_end) + 2.0;
    double tail = c * hurwitz_zeta(1.5, first_missing);
    // The 1/sqrt(k) correction is only resolved once the k range is long
    // compared with the oscillation scale set by a.
    if (a == 0.0 || static_cast<double>(k_end) * a >= 25.0) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t k = k_end / 2; k <= k_end; ++k) {
            const double kp1 = static_cast<double>(k) + 1.0;
            const double y = per_k[k] * std::pow(kp1, 1.5) / c - 1.0;
            num += y / std::sqrt(kp1);
            den += 1.0 / kp1;
        }
        const double d = num / den;
        tail += c * d * hurwitz_zeta(2.0, first_missing);
    }
    return tail;
}

}  // namespace monostat::detail
