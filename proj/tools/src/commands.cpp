// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#include "monostat_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "monostat/errors.hpp"
#include "monostat/parallel.hpp"
#include "monostat/rng.hpp"
#include "monostat/version.hpp"

namespace monostat::cli {
namespace {

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

RunManifest make_manifest(std::string command, std::uint64_t seed) {
    RunManifest m;
    m.command = std::move(command);
    m.seed = seed;
    m.version = kVersion;
    m.timestamp = utc_timestamp();
    return m;
}

void add_truncation(RunManifest& m, const SeriesTruncation& t) {
    m.add("n_max", std::to_string(t.n_max));
    m.add("k_max", std::to_string(t.k_max));
    m.add("tail_tol", t.tail_tol);
    m.add("asymptotic_tail", t.asymptotic_tail ? "true" : "false");
}

void add_sim(RunManifest& m, const SimOptions& s) {
    m.add("samples", std::to_string(s.samples));
    m.add("segments", std::to_string(s.segments));
    m.add("realizations", std::to_string(s.realizations));
    m.add("oversample", s.oversample);
    m.add("boxcar_bandwidths", mc::kDefaultBoxcarBandwidths);
}

void require_grid(const std::vector<double>& grid, const char* name) {
    if (grid.empty()) throw ConfigError(std::string(name) + ": grid must be nonempty");
    for (double v : grid) {
        if (!std::isfinite(v)) throw ConfigError(std::string(name) + ": grid values must be finite");
    }
}

const char* bool_cell(bool v) { return v ? "true" : "false"; }

}  // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_grid(const std::vector<double>& grid) {
    std::string out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i > 0) out += ',';
        out += format_double(grid[i]);
    }
    return out;
}

void RunManifest::add(std::string key, std::string value) {
    params.emplace_back(std::move(key), std::move(value));
}

void RunManifest::add(std::string key, double value) { add(std::move(key), format_double(value)); }

std::string RunManifest::header() const {
    std::ostringstream os;
    os << "# command: " << command << '\n';
    os << "# version: " << version << '\n';
    os << "# seed: " << seed << '\n';
    for (const auto& [k, v] : params) os << "# " << k << ": " << v << '\n';
    return os.str();
}

std::string RunManifest::sidecar() const {
    std::ostringstream os;
    os << "command=" << command << '\n';
    os << "version=" << version << '\n';
    os << "seed=" << seed << '\n';
    for (const auto& [k, v] : params) os << k << '=' << v << '\n';
    os << "timestamp=" << timestamp << '\n';
    return os.str();
}

std::string CsvTable::to_csv() const {
    std::ostringstream os;
    os << manifest.header();
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
    return os.str();
}

const std::string& CsvTable::cell(std::size_t row, const std::string& column) const {
    const auto it = std::find(columns.begin(), columns.end(), column);
    if (it == columns.end()) throw std::out_of_range("CsvTable: no column " + column);
    return rows.at(row).at(static_cast<std::size_t>(it - columns.begin()));
}

CsvTable cmd_alpha_sweep(const std::vector<double>& snr_grid,
                         const std::vector<double>& lambda_grid) {
    require_grid(snr_grid, "snr");
    require_grid(lambda_grid, "lambda");
    CsvTable t;
    t.manifest = make_manifest("alpha-sweep", 0);
    t.manifest.add("snr_grid", format_grid(snr_grid));
    t.manifest.add("lambda_grid", format_grid(lambda_grid));
    t.columns = {"snr", "lambda", "alpha"};
    for (double lambda : lambda_grid) {
        for (double snr : snr_grid) {
            const SweepPoint sp{snr, lambda};
            sp.validate();
            const double alpha = reduction_factor(sp.to_powers());
            t.rows.push_back({format_double(snr), format_double(lambda), format_double(alpha)});
        }
    }
    return t;
}

CsvTable cmd_chi_table(const std::vector<double>& a_grid, const std::vector<double>& b_grid,
                       const SeriesTruncation& trunc, bool simulate, const SimOptions& sim,
                       std::size_t workers) {
    require_grid(a_grid, "a");
    require_grid(b_grid, "b");
    trunc.validate();
    CsvTable t;
    t.manifest = make_manifest("chi-table", simulate ? sim.seed : 0);
    t.manifest.add("a_grid", format_grid(a_grid));
    t.manifest.add("b_grid", format_grid(b_grid));
    add_truncation(t.manifest, trunc);
    t.manifest.add("simulate", bool_cell(simulate));
    if (simulate) add_sim(t.manifest, sim);
    t.columns = {"a", "b", "chi_analytic"};
    if (simulate) {
        t.columns.insert(t.columns.end(), {"chi_sim", "chi_sim_stderr", "agree_3sigma"});
    }

    const std::size_t nb = b_grid.size();
    const std::size_t cells = a_grid.size() * nb;
    std::vector<std::vector<std::string>> rows(cells);
    std::vector<char> agree(cells, 1);
    // Analytic cells are independent tasks; results land in fixed slots so
    // the output order never depends on scheduling.
    parallel_for(cells, workers, [&](std::size_t i) {
        const double a = a_grid[i / nb];
        const double b = b_grid[i % nb];
        const SeriesResult<double> c = chi(a, b, trunc);
        if (!c.converged) throw ConvergenceError("chi-table: series did not converge");
        rows[i] = {format_double(a), format_double(b), format_double(c.value)};
    });
    if (simulate) {
        // Simulations parallelize over realizations instead.
        for (std::size_t i = 0; i < cells; ++i) {
            const double a = a_grid[i / nb];
            const double b = b_grid[i % nb];
            const FlatSpectrumSetup setup{1.0, 0.5 * b};
            const SignalPowers powers{a, 0.0, 1.0, 1.0};
            const mc::CarrierParams carrier{a, setup.carrier_offset, std::nullopt};
            mc::SimConfig cfg = mc::SimConfig::for_setup(
                setup, sim.oversample, sim.samples, rng::derive_key(sim.seed, i, 0), sim.segments,
                sim.realizations);
            cfg.workers = sim.workers;
            const mc::ChiEstimate est = mc::estimate_chi(powers, carrier, setup, cfg);
            const double analytic = std::stod(rows[i][2]);
            const bool ok = std::abs(est.chi.value - analytic) <= 3.0 * est.chi.std_error;
            agree[i] = ok ? 1 : 0;
            rows[i].insert(rows[i].end(), {format_double(est.chi.value),
                                           format_double(est.chi.std_error), bool_cell(ok)});
        }
    }
    t.rows = std::move(rows);
    t.disagreement = std::find(agree.begin(), agree.end(), 0) != agree.end();
    return t;
}

CsvTable cmd_rss(double rho, double mu, const SignalPowers& powers, const SeriesTruncation& trunc) {
    powers.validate();
    trunc.validate();
    if (!std::isfinite(rho) || !std::isfinite(mu)) throw ConfigError("rss: rho and mu must be finite");
    const CorrelationCoefficient r{rho, mu};
    if (!(rho * rho + mu * mu < 1.0)) throw DivergenceError("divergence: |r| >= 1");

    CsvTable t;
    t.manifest = make_manifest("rss", 0);
    t.manifest.add("rho", rho);
    t.manifest.add("mu", mu);
    t.manifest.add("p_c", powers.p_carrier);
    t.manifest.add("p_x", powers.p_gaussian_signal);
    t.manifest.add("p_sigma", powers.p_sum_noise);
    add_truncation(t.manifest, trunc);
    t.columns = {"rho", "mu", "p_c", "p_x", "p_sigma", "rss_re", "rss_im", "rss_closed_re",
                 "rss_closed_im"};

    const SeriesResult<cplx> v = rss_general(r, powers, trunc);
    if (!v.converged) throw ConvergenceError("rss: series did not converge");
    std::vector<std::string> row = {format_double(rho),
                                    format_double(mu),
                                    format_double(powers.p_carrier),
                                    format_double(powers.p_gaussian_signal),
                                    format_double(powers.p_sum_noise),
                                    format_double(v.value.real()),
                                    format_double(v.value.imag())};
    if (powers.p_carrier == 0.0) {
        const cplx closed = rss_gaussian(r, powers.total_gaussian());
        row.push_back(format_double(closed.real()));
        row.push_back(format_double(closed.imag()));
    } else {
        row.emplace_back();
        row.emplace_back();
    }
    t.rows.push_back(std::move(row));
    return t;
}

CsvTable cmd_simulate(const SignalPowers& powers, const FlatSpectrumSetup& setup,
                      const TrackingGeometry& geometry, const SimOptions& sim,
                      const SeriesTruncation& trunc) {
    powers.validate();
    setup.validate();
    geometry.validate();
    trunc.validate();
    mc::SimConfig cfg = mc::SimConfig::for_setup(setup, sim.oversample, sim.samples, sim.seed,
                                                 sim.segments, sim.realizations);
    cfg.workers = sim.workers;
    const mc::CarrierParams carrier{powers.p_carrier, setup.carrier_offset, std::nullopt};

    CsvTable t;
    t.manifest = make_manifest("simulate", sim.seed);
    t.manifest.add("p_c", powers.p_carrier);
    t.manifest.add("p_x", powers.p_gaussian_signal);
    t.manifest.add("p_sigma", powers.p_sum_noise);
    t.manifest.add("p_delta", powers.p_delta_noise);
    t.manifest.add("bandwidth", setup.bandwidth);
    t.manifest.add("carrier_offset", setup.carrier_offset);
    t.manifest.add("theta_s", geometry.theta_s);
    t.manifest.add("phi_s", geometry.phi_s);
    t.manifest.add("k_f", geometry.k_f);
    add_sim(t.manifest, sim);
    add_truncation(t.manifest, trunc);
    t.manifest.add("sample_rate", cfg.sample_rate);
    t.manifest.add("boxcar_len", std::to_string(cfg.boxcar_len));

    t.columns = {"a",
                 "b",
                 "alpha_est_re",
                 "alpha_est_im",
                 "alpha_stderr_re",
                 "alpha_stderr_im",
                 "alpha_analytic",
                 "sdm0_est",
                 "sdm0_stderr",
                 "sdm0_analytic",
                 "chi_est",
                 "chi_stderr",
                 "chi_periodogram",
                 "chi_periodogram_stderr",
                 "chi_boxcar",
                 "chi_boxcar_stderr",
                 "chi_analytic",
                 "n_flagged",
                 "estimators_agree"};

    const double a = powers.carrier_ratio();
    const double b = setup.b();
    std::vector<std::string> row = {format_double(a), format_double(b)};
    if (geometry.theta_s > 0.0) {
        const mc::AlphaEstimate al = mc::estimate_alpha(powers, carrier, geometry, setup, cfg);
        row.insert(row.end(), {format_double(al.value.real()), format_double(al.value.imag()),
                               format_double(al.std_error_re), format_double(al.std_error_im),
                               format_double(reduction_factor(powers))});
    } else {
        row.insert(row.end(), 5, std::string());
    }

    // The chi estimators assume null tracking, so they run on a separate
    // theta_s = 0 record.
    const mc::ChiEstimate est = mc::estimate_chi(powers, carrier, setup, cfg);
    const SeriesResult<double> c = chi(a, b, trunc);
    const double sdm0_analytic = powers.p_delta_noise / (setup.bandwidth * powers.total_gaussian()) * c.value;
    row.insert(row.end(),
               {format_double(est.sdm0.value), format_double(est.sdm0.std_error),
                format_double(sdm0_analytic), format_double(est.chi.value),
                format_double(est.chi.std_error), format_double(est.chi_periodogram.value),
                format_double(est.chi_periodogram.std_error), format_double(est.chi_boxcar.value),
                format_double(est.chi_boxcar.std_error), format_double(c.value),
                std::to_string(est.n_flagged), bool_cell(est.estimators_agree)});
    t.rows.push_back(std::move(row));
    t.disagreement = !est.estimators_agree;
    return t;
}

void write_output(const CsvTable& table, const std::string& path) {
    if (path.empty()) {
        std::cout << table.to_csv();
        std::cout.flush();
        return;
    }
    {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + path);
        out << table.to_csv();
        if (!out) throw std::runtime_error("write failed: " + path);
    }
    std::ofstream side(path + ".manifest", std::ios::binary);
    if (!side) throw std::runtime_error("cannot open " + path + ".manifest");
    side << table.manifest.sidecar();
    if (!side) throw std::runtime_error("write failed: " + path + ".manifest");
}

}  // namespace monostat::cli
