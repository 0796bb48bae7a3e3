// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Runtime limits are part of each criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "monostat/analytic.hpp"
#include "monostat/montecarlo.hpp"
#include "monostat/specfun.hpp"
#include "monostat_cli/commands.hpp"
#include "oracles.hpp"
#include "properties.hpp"

namespace {

using monostat::CorrelationCoefficient;
using monostat::SignalPowers;
using monostat::cplx;
namespace mt = monostat::testing;
namespace mc = monostat::mc;
namespace cli = monostat::cli;

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome gaussian_limit() {
    const double integral = mt::gaussian_limit_integral();
    double worst_constant = 0.0;
    double worst_integral = 0.0;
    bool converged = true;
    for (double b : {0.0, 0.5, 1.0, 1.5, 2.0}) {
        const auto c = monostat::chi(0.0, b);
        converged = converged && c.converged;
        worst_constant = std::max(worst_constant, std::abs(c.value - 2.55) / 2.55);
        worst_integral = std::max(worst_integral, std::abs(c.value - integral) / integral);
    }
    return {converged && worst_constant <= 0.01 && worst_integral <= 0.002,
            fmt("chi(0,b) vs 2.55 max rel %.2e, vs integral %.6f max rel %.2e", worst_constant,
                integral, worst_integral)};
}

Outcome series_closed_form() {
    double worst = 0.0;
    bool converged = true;
    std::size_t cases = 0;
    for (double mag : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99}) {
        for (int j = 0; j < 8; ++j) {
            const auto r = CorrelationCoefficient::from_complex(std::polar(mag, 2.0 * kPi * j / 8.0));
            const SignalPowers p{0.0, 0.7, 1.3, 1.0};
            const auto series = monostat::rss_general(r, p);
            const cplx closed = monostat::rss_gaussian(r, p.total_gaussian());
            converged = converged && series.converged;
            worst = std::max(worst, std::abs(series.value - closed) / std::abs(closed));
            ++cases;
        }
    }
    return {converged && worst <= 1e-6, fmt("%zu cases, max rel diff %.2e", cases, worst)};
}

Outcome expectation_oracle() {
    struct Point {
        double mag;
        double phase;
        SignalPowers powers;
    };
    const std::vector<Point> points = {
        {0.3, 0.4, {0.0, 0.5, 1.0, 1.0}},
        {0.7, -1.1, {0.0, 1.0, 1.0, 1.0}},
        {0.3, 2.0, {1.0, 0.5, 1.0, 1.0}},
        {0.7, 0.9, {1.0, 1.0, 0.5, 1.0}},
        {0.7, -2.6, {2.0, 0.5, 1.0, 1.0}},
    };
    double worst_z = 0.0;
    bool ok = true;
    std::uint64_t seed = 1001;
    for (const auto& pt : points) {
        const cplx r = std::polar(pt.mag, pt.phase);
        const auto cc = CorrelationCoefficient::from_complex(r);
        const auto series = monostat::rss_general(cc, pt.powers);
        const auto draw = mt::rss_monte_carlo(cc.rho, cc.mu, pt.powers, 10'000'000, seed++);
        const double z_re = (series.value.real() - draw.value.real()) / draw.se_re;
        const double z_im = (series.value.imag() - draw.value.imag()) / draw.se_im;
        worst_z = std::max({worst_z, std::abs(z_re), std::abs(z_im)});
        ok = ok && series.converged && std::abs(z_re) <= 3.0 && std::abs(z_im) <= 3.0;
    }
    return {ok, fmt("5 points, 1e7 draws each, max |z| %.2f", worst_z)};
}

Outcome reduction_factor_grid() {
    const monostat::FlatSpectrumSetup setup{1.0, 0.0};
    // theta_s K_F = 2 keeps the difference-noise term of the ratio small
    // next to the signal term, so the lambda ordering resolves at SNR 0.1.
    const monostat::TrackingGeometry geometry{0.05, 0.3, 40.0};
    const auto cfg = mc::SimConfig::for_setup(setup, 4.0, std::size_t{1} << 21, 42, 16, 4);
    double worst_z = 0.0;
    bool brackets = true;
    bool ordering = true;
    for (double snr : {0.1, 1.0, 10.0}) {
        double est_carrier = 0.0;
        double se_carrier = 0.0;
        for (double lambda : {0.0, 0.5, 1.0}) {
            const SignalPowers p = monostat::SweepPoint{snr, lambda}.to_powers();
            const auto est = mc::estimate_alpha(p, {p.p_carrier, 0.0, std::nullopt}, geometry,
                                                setup, cfg);
            const double alpha = monostat::reduction_factor(p);
            const double z_re = (est.value.real() - alpha) / est.std_error_re;
            const double z_im = est.value.imag() / est.std_error_im;
            worst_z = std::max({worst_z, std::abs(z_re), std::abs(z_im)});
            brackets = brackets && std::abs(z_re) <= 3.0 && std::abs(z_im) <= 3.0;
            if (lambda == 0.0) {
                est_carrier = est.value.real();
                se_carrier = est.std_error_re;
            } else if (lambda == 1.0) {
                const double gap = est_carrier - est.value.real();
                const double gap_se = std::hypot(se_carrier, est.std_error_re);
                const double analytic_gap =
                    monostat::reduction_factor(monostat::SweepPoint{snr, 0.0}.to_powers()) - alpha;
                // Both the model and the estimates must order carrier above
                // Gaussian signal, the estimates by at least 3 sigma.
                ordering = ordering && analytic_gap > 0.0 && gap > 3.0 * gap_se;
            }
        }
    }
    return {brackets && ordering,
            fmt("9 points, max |z| %.2f, ordering alpha(0) > alpha(1) %s", worst_z,
                ordering ? "resolved at every SNR" : "NOT resolved")};
}

Outcome chi_table_simulation() {
    cli::SimOptions sim;  // defaults: 2^22 samples, 16 segments, 8 realizations
    const auto table =
        cli::cmd_chi_table(cli::kDefaultAGrid, cli::kDefaultBGrid, {}, true, sim, 1);
    std::size_t agree = 0;
    double worst_rel_se = 0.0;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        if (table.cell(i, "agree_3sigma") == "true") ++agree;
        const double rel = std::stod(table.cell(i, "chi_sim_stderr")) /
                           std::stod(table.cell(i, "chi_analytic"));
        worst_rel_se = std::max(worst_rel_se, rel);
    }
    return {table.rows.size() == 25 && agree >= 24 && worst_rel_se <= 0.05,
            fmt("%zu/25 cells agree within 3 sigma, max stderr/analytic %.3f", agree,
                worst_rel_se)};
}

Outcome sinc_coefficients() {
    double worst = 0.0;
    std::size_t cases = 0;
    for (int n = 1; n <= 12; ++n) {
        for (int q = 0; q <= 4 * n; ++q) {
            const double m = 0.25 * q;
            worst = std::max(worst, std::abs(monostat::sinc_power_coeff(n, m) -
                                             mt::sinc_power_quadrature(n, m)));
            ++cases;
        }
    }
    const bool exact = monostat::sinc_power_coeff(1, 1.0) == kPi / 4.0;
    return {worst <= 1e-8 && exact,
            fmt("%zu cases, max abs diff %.2e, c_1(1) == pi/4 %s", cases, worst,
                exact ? "exactly" : "NOT exactly")};
}

Outcome quadrature_path() {
    double worst = 0.0;
    for (auto [a, b] : {std::pair{0.0, 0.0}, std::pair{1.0, 0.5}, std::pair{2.0, 1.0}}) {
        const double w = 1.0;
        const double offset = 0.5 * b * w;
        const SignalPowers p{a, 0.5, 0.5, 1.0};
        const auto sinc_r = [&](double tau) {
            return monostat::specfun::sinc(kPi * w * tau) * std::polar(1.0, -2.0 * kPi * offset * tau);
        };
        monostat::QuadratureConfig q;
        q.tau_scale = 1.0 / w;
        // Flat difference spectrum evaluated at 0 Hz; half-height at the edge.
        q.delta_psd_at_zero = p.p_delta_noise / w * (b < 1.0 ? 1.0 : (b == 1.0 ? 0.5 : 0.0));
        const auto res = monostat::sdm0_numeric(
            [&](double tau) { return CorrelationCoefficient::from_complex(sinc_r(tau)); },
            [&](double tau) { return p.p_delta_noise * sinc_r(tau); }, p, {}, q);
        const double ref = monostat::sdm0_flat(p, {w, offset});
        worst = std::max(worst, std::abs(res.value - ref) / ref);
    }
    return {worst <= 0.005, fmt("3 points, max rel diff %.2e", worst)};
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome determinism() {
    const auto dir = std::filesystem::temp_directory_path();
    std::vector<std::string> outputs;
    for (const char* workers : {"1", "1", "2"}) {
        const auto path = dir / (std::string("monostat_acceptance_") + workers + ".csv");
        std::vector<std::string> args = {"monostat", "simulate", "--p-carrier", "1",
                                         "--p-signal", "0.5", "--carrier-offset", "0.2",
                                         "--theta-s", "0.01", "--k-f", "20",
                                         "--samples", "262144", "--segments", "8",
                                         "--realizations", "2", "--oversample", "8",
                                         "--seed", "2026", "--out", path.string()};
        setenv("MONOSTAT_WORKERS", workers, 1);
        std::vector<char*> argv;
        for (auto& a : args) argv.push_back(a.data());
        const int rc = cli::run(static_cast<int>(argv.size()), argv.data());
        unsetenv("MONOSTAT_WORKERS");
        if (rc != cli::kExitOk && rc != cli::kExitDisagreement) {
            return {false, fmt("simulate exited with %d", rc)};
        }
        outputs.push_back(read_file(path));
        std::filesystem::remove(path);
        std::filesystem::remove(path.string() + ".manifest");
    }
    const bool identical = !outputs[0].empty() && outputs[0] == outputs[1] &&
                           outputs[0] == outputs[2];

    std::size_t cases = 0;
    std::string failed;
    for (const auto& rep : mt::run_all_properties(20260501)) {
        cases += rep.cases;
        if (!rep.passed()) failed += " " + rep.name + " (" + rep.first_failure + ")";
    }
    return {identical && failed.empty(),
            fmt("simulate output %s across repeats and worker counts; %zu property cases%s",
                identical ? "byte-identical" : "DIFFERS", cases,
                failed.empty() ? " all pass" : (", failed:" + failed).c_str())};
}

struct Criterion {
    int id;
    double limit_s;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, 10.0, gaussian_limit},       {2, 30.0, series_closed_form},
        {3, 300.0, expectation_oracle},  {4, 120.0, reduction_factor_grid},
        {5, 1800.0, chi_table_simulation}, {6, 60.0, sinc_coefficients},
        {7, 60.0, quadrature_path},      {8, 600.0, determinism},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.limit_s;
        const bool pass = out.pass && in_time;
        if (!pass) ++failures;
        std::printf("%s criterion %d: %s; %.1f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id,
                    out.detail.c_str(), secs, c.limit_s, in_time ? "" : " TOO SLOW");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
