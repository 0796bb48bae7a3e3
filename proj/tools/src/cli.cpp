// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "monostat/errors.hpp"
#include "monostat/version.hpp"
#include "monostat_cli/commands.hpp"

namespace monostat::cli {
namespace {

constexpr const char* kWorkersEnv = "MONOSTAT_WORKERS";

std::size_t default_workers() {
    if (const char* env = std::getenv(kWorkersEnv)) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return v;
        throw ConfigError(std::string(kWorkersEnv) + " must be a positive integer");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void add_truncation_flags(CLI::App* cmd, SeriesTruncation& t) {
    cmd->add_option("--n-max", t.n_max, "Hard cap on the outer series index")->capture_default_str();
    cmd->add_option("--k-max", t.k_max, "Inner terms before the asymptotic tail")->capture_default_str();
    cmd->add_option("--tail-tol", t.tail_tol, "Relative stopping tolerance")->capture_default_str();
}

void add_sim_flags(CLI::App* cmd, SimOptions& s) {
    cmd->add_option("--seed", s.seed, "Master seed")->capture_default_str();
    cmd->add_option("--samples", s.samples, "Samples per realization")->capture_default_str();
    cmd->add_option("--segments", s.segments, "Segments per realization")->capture_default_str();
    cmd->add_option("--realizations", s.realizations, "Independent records")->capture_default_str();
    cmd->add_option("--oversample", s.oversample, "sample_rate / (W/2 + f_c)")->capture_default_str();
}

std::vector<double> from_db(const std::vector<double>& db) {
    std::vector<double> out;
    out.reserve(db.size());
    for (double v : db) out.push_back(std::pow(10.0, v / 10.0));
    return out;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"monostat: monopulse ratio statistics"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    std::string out_path;

    std::vector<double> snr_grid = {0.1, 1.0, 10.0};
    std::vector<double> snr_db_grid;
    std::vector<double> lambda_grid = {0.0, 0.5, 1.0};
    auto* alpha = app.add_subcommand("alpha-sweep", "Reduction factor over an SNR x lambda grid");
    auto* snr_opt = alpha->add_option("--snr-grid", snr_grid, "Linear SNR grid")->delimiter(',');
    alpha->add_option("--snr-db", snr_db_grid, "SNR grid in dB")->delimiter(',')->excludes(snr_opt);
    alpha->add_option("--lambda-grid", lambda_grid, "lambda grid")->delimiter(',');

    std::vector<double> a_grid = kDefaultAGrid;
    std::vector<double> b_grid = kDefaultBGrid;
    SeriesTruncation chi_trunc;
    SimOptions chi_sim;
    bool simulate_flag = false;
    auto* table = app.add_subcommand("chi-table", "chi(a, b) on a grid, optionally simulated");
    table->add_option("--a-grid", a_grid, "a = P_c / P grid")->delimiter(',');
    table->add_option("--b-grid", b_grid, "b = f_c / (W/2) grid")->delimiter(',');
    table->add_flag("--simulate", simulate_flag, "Also estimate each cell by simulation");
    add_truncation_flags(table, chi_trunc);
    add_sim_flags(table, chi_sim);

    double rho = 0.0;
    double mu = 0.0;
    SignalPowers rss_powers;
    SeriesTruncation rss_trunc;
    auto* rss = app.add_subcommand("rss", "Autocorrelation of 1/S at one correlation value");
    rss->add_option("--rho", rho)->required();
    rss->add_option("--mu", mu)->capture_default_str();
    rss->add_option("--p-carrier", rss_powers.p_carrier)->capture_default_str();
    rss->add_option("--p-signal", rss_powers.p_gaussian_signal)->capture_default_str();
    rss->add_option("--p-sum-noise", rss_powers.p_sum_noise)->capture_default_str();
    add_truncation_flags(rss, rss_trunc);

    SignalPowers sim_powers;
    FlatSpectrumSetup sim_setup;
    TrackingGeometry sim_geometry;
    SimOptions sim_opts;
    SeriesTruncation sim_trunc;
    std::optional<double> snr_db;
    std::optional<double> sim_lambda;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo estimates at one operating point");
    auto* pc = sim->add_option("--p-carrier", sim_powers.p_carrier)->capture_default_str();
    auto* px = sim->add_option("--p-signal", sim_powers.p_gaussian_signal)->capture_default_str();
    sim->add_option("--p-sum-noise", sim_powers.p_sum_noise)->capture_default_str();
    sim->add_option("--p-delta-noise", sim_powers.p_delta_noise)->capture_default_str();
    auto* sdb = sim->add_option("--snr-db", snr_db, "(P_x + P_c) / P_Sigma in dB; needs --lambda")
                    ->excludes(pc)
                    ->excludes(px);
    sim->add_option("--lambda", sim_lambda, "P_x / (P_x + P_c)")->needs(sdb);
    sim->add_option("--bandwidth", sim_setup.bandwidth)->capture_default_str();
    sim->add_option("--carrier-offset", sim_setup.carrier_offset)->capture_default_str();
    sim->add_option("--theta-s", sim_geometry.theta_s)->capture_default_str();
    sim->add_option("--phi-s", sim_geometry.phi_s)->capture_default_str();
    sim->add_option("--k-f", sim_geometry.k_f)->capture_default_str();
    add_sim_flags(sim, sim_opts);
    add_truncation_flags(sim, sim_trunc);

    for (auto* cmd : {alpha, table, rss, sim}) {
        cmd->add_option("--out", out_path, "Output CSV path (stdout when omitted)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInvalid;
    }

    try {
        const std::size_t workers = default_workers();
        CsvTable result;
        if (*alpha) {
            result = cmd_alpha_sweep(snr_db_grid.empty() ? snr_grid : from_db(snr_db_grid),
                                     lambda_grid);
        } else if (*table) {
            chi_sim.workers = workers;
            result = cmd_chi_table(a_grid, b_grid, chi_trunc, simulate_flag, chi_sim, workers);
        } else if (*rss) {
            result = cmd_rss(rho, mu, rss_powers, rss_trunc);
        } else {
            if (snr_db) {
                if (!sim_lambda) throw ConfigError("--snr-db needs --lambda");
                SweepPoint sp{std::pow(10.0, *snr_db / 10.0), *sim_lambda};
                sp.validate();
                const SignalPowers lin = sp.to_powers();
                sim_powers.p_carrier = lin.p_carrier * sim_powers.p_sum_noise;
                sim_powers.p_gaussian_signal = lin.p_gaussian_signal * sim_powers.p_sum_noise;
            }
            sim_opts.workers = workers;
            result = cmd_simulate(sim_powers, sim_setup, sim_geometry, sim_opts, sim_trunc);
        }
        write_output(result, out_path);
        if (result.disagreement) {
            std::cerr << "warning: estimator disagreement beyond 3 sigma\n";
            return kExitDisagreement;
        }
        return kExitOk;
    } catch (const DivergenceError& e) {
        std::cerr << e.what() << '\n';
        return kExitDivergence;
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence: " << e.what() << '\n';
        return kExitDivergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid parameters: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace monostat::cli
