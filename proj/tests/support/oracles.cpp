// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#include "oracles.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <boost/math/special_functions/laguerre.hpp>

namespace monostat::testing {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kBatches = 100;

// Integral of sin(t)/t over [x, inf) for large x (auxiliary-function
// asymptotics, error below 6!/x^7).
double sine_integral_tail(double x) {
    const double x2 = x * x;
    const double f = (1.0 - 2.0 / x2 + 24.0 / (x2 * x2)) / x;
    const double g = (1.0 - 6.0 / x2 + 120.0 / (x2 * x2)) / x2;
    return f * std::cos(x) + g * std::sin(x);
}

// Integral of cos(w y)/y^2 over [y0, inf), w >= 0, by repeated integration
// by parts when w y0 is large.
double cos_over_square_tail(double w, double y0) {
    if (w == 0.0) return 1.0 / y0;
    const double x = w * y0;
    const double x2 = x * x;
    const double s = std::sin(x);
    const double c = std::cos(x);
    return w * (-s / x2 + 2.0 * c / (x2 * x) + 6.0 * s / (x2 * x2) - 24.0 * c / (x2 * x2 * x));
}

double sinc(double y) { return y == 0.0 ? 1.0 : std::sin(y) / y; }

struct BatchMeans {
    std::vector<cplx> batch;

    ComplexMean finish() const {
        const double nb = static_cast<double>(batch.size());
        cplx mean{};
        for (const cplx& b : batch) mean += b;
        mean /= nb;
        double vr = 0.0;
        double vi = 0.0;
        for (const cplx& b : batch) {
            vr += std::pow(b.real() - mean.real(), 2);
            vi += std::pow(b.imag() - mean.imag(), 2);
        }
        return {mean, std::sqrt(vr / (nb - 1.0) / nb), std::sqrt(vi / (nb - 1.0) / nb)};
    }
};

}  // namespace

double boost_hyp1f1(double a, double b, double x) {
    // Boost 1.74 throws or returns wrong values for some integer patterns
    // (e.g. a = 105, b = 1, x = -1). For positive integer b = alpha + 1,
    // 1F1(-k; b; z) = L_k^alpha(z) / L_k^alpha(0), and Kummer's transform
    // covers a = b + k.
    const bool integer_b = b >= 1.0 && b == std::round(b) && b < 1e4;
    if (integer_b && a == std::round(a) && std::abs(a) < 1e4 && (a <= 0.0 || a >= b)) {
        const auto alpha = static_cast<unsigned>(b - 1.0);
        const auto laguerre_ratio = [&](unsigned k, double z) {
            return boost::math::laguerre(k, alpha, z) / boost::math::laguerre(k, alpha, 0.0);
        };
        if (a <= 0.0) return laguerre_ratio(static_cast<unsigned>(-a), x);
        return std::exp(x) * laguerre_ratio(static_cast<unsigned>(a - b), -x);
    }
    return boost::math::hypergeometric_1F1(a, b, x);
}

double boost_lgamma(double x) { return boost::math::lgamma(x); }

long double taylor_hyp1f1(long double a, long double b, long double x) {
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 0; k < 5000; ++k) {
        term *= (a + k) / (b + k) * x / (k + 1);
        sum += term;
        if (std::fabs(term) <= 1e-21L * std::fabs(sum)) return sum;
    }
    throw std::runtime_error("taylor_hyp1f1: no convergence");
}

double sinc_power_quadrature(int n, double m) {
    // Beyond the cutoff the integrand is below y^-n; n = 1 and n = 2 need the
    // explicit tails, higher powers are below the 1e-9 level.
    const double y_max = n <= 2 ? 1e5 : (n == 3 ? 1e4 : 1e3);
    const auto panels = static_cast<std::size_t>(std::ceil(y_max / kPi));
    const double cutoff = static_cast<double>(panels) * kPi;
    auto f = [n, m](double y) { return std::pow(sinc(y), n) * std::cos(m * y); };
    // The highest frequency in the integrand is n + m; sub-panels of about
    // one period, on which a single 31-point Kronrod rule is already exact to
    // rounding; adaptive refinement would only chase rounding noise.
    const auto sub = static_cast<std::size_t>(std::ceil(0.5 * (n + m))) + 1;
    const double width = kPi / static_cast<double>(sub);
    long double sum = 0.0L;
    for (std::size_t j = 0; j < panels * sub; ++j) {
        const double lo = static_cast<double>(j) * width;
        sum += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, lo + width, 0);
    }
    double tail = 0.0;
    if (n == 1) {
        // sin y cos(m y) = (sin((1 + m) y) + sin((1 - m) y)) / 2
        tail = 0.5 * sine_integral_tail((1.0 + m) * cutoff);
        if (m != 1.0) {
            const double sign = m < 1.0 ? 1.0 : -1.0;
            tail += 0.5 * sign * sine_integral_tail(std::abs(1.0 - m) * cutoff);
        }
    } else if (n == 2) {
        // sin^2 y cos(m y) = cos(m y)/2 - cos((2 + m) y)/4 - cos((2 - m) y)/4
        tail = 0.5 * cos_over_square_tail(m, cutoff) - 0.25 * cos_over_square_tail(2.0 + m, cutoff) -
               0.25 * cos_over_square_tail(std::abs(2.0 - m), cutoff);
    }
    return static_cast<double>(sum) + tail;
}

double gaussian_limit_integral() {
    auto g = [](double y) {
        // 1 - sinc^2 loses all digits near 0; there -ln(1 - sinc^2) is
        // -ln(y^2 / 3) - ln(1 - 2 y^2 / 15 + y^4 / 105), which never underflows.
        if (y < 1e-2) {
            const double y2 = y * y;
            return std::log(3.0) - 2.0 * std::log(y) - std::log1p(-2.0 * y2 / 15.0 + y2 * y2 / 105.0);
        }
        const double s = std::sin(y) / y;
        return -std::log(1.0 - s * s);
    };
    // The first interval carries the log singularity at 0.
    boost::math::quadrature::tanh_sinh<double> ts;
    long double sum = ts.integrate(g, 0.0, kPi);
    const std::size_t panels = 10000;
    for (std::size_t j = 1; j < panels; ++j) {
        const double lo = static_cast<double>(j) * kPi;
        sum += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, lo, lo + kPi, 8,
                                                                             1e-15);
    }
    // Tail: -ln(1 - s^2) = s^2 + s^4/2 + ..., and s^2 = (1 - cos 2y) / (2 y^2);
    // the s^4 part is below 1e-12 here.
    const double cutoff = static_cast<double>(panels) * kPi;
    const double tail = 0.5 * cos_over_square_tail(0.0, cutoff) - 0.5 * cos_over_square_tail(2.0, cutoff);
    return 2.0 / kPi * (static_cast<double>(sum) + tail);
}

ComplexMean rss_monte_carlo(double rho, double mu, const SignalPowers& powers, std::size_t draws,
                            std::uint64_t seed) {
    const double p = powers.total_gaussian();
    const double amp = std::sqrt(powers.p_carrier);
    const std::array<std::array<double, 4>, 4> cov = {{{1.0, 0.0, rho, -mu},
                                                       {0.0, 1.0, mu, rho},
                                                       {rho, mu, 1.0, 0.0},
                                                       {-mu, rho, 0.0, 1.0}}};
    std::array<std::array<double, 4>, 4> chol{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = cov[i][j];
            for (int k = 0; k < j; ++k) s -= chol[i][k] * chol[j][k];
            chol[i][j] = i == j ? std::sqrt(s) : s / chol[j][j];
        }
    }
    const double scale = std::sqrt(0.5 * p);

    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    BatchMeans bm;
    const std::size_t per_batch = draws / kBatches;
    for (std::size_t b = 0; b < kBatches; ++b) {
        cplx acc{};
        for (std::size_t i = 0; i < per_batch; ++i) {
            std::array<double, 4> e{};
            for (double& v : e) v = normal(gen);
            std::array<double, 4> z{};
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c <= r; ++c) z[r] += chol[r][c] * e[c];
                z[r] *= scale;
            }
            const double theta = phase(gen);
            const cplx carrier = std::polar(amp, theta);
            const cplx later = carrier + cplx(z[2], z[3]);
            const cplx earlier_conj = std::conj(carrier) + cplx(z[0], -z[1]);
            acc += 1.0 / (later * earlier_conj);
        }
        bm.batch.push_back(acc / static_cast<double>(per_batch));
    }
    return bm.finish();
}

ComplexMean alpha_monte_carlo(const SignalPowers& powers, std::size_t draws, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
    const double amp = std::sqrt(powers.p_carrier);
    const double sx = std::sqrt(0.5 * powers.p_gaussian_signal);
    const double sn = std::sqrt(0.5 * powers.p_sum_noise);
    BatchMeans bm;
    const std::size_t per_batch = draws / kBatches;
    for (std::size_t b = 0; b < kBatches; ++b) {
        cplx acc{};
        for (std::size_t i = 0; i < per_batch; ++i) {
            const cplx signal = std::polar(amp, phase(gen)) + sx * cplx(normal(gen), normal(gen));
            const cplx noise = sn * cplx(normal(gen), normal(gen));
            acc += signal / (signal + noise);
        }
        bm.batch.push_back(acc / static_cast<double>(per_batch));
    }
    return bm.finish();
}

}  // namespace monostat::testing
