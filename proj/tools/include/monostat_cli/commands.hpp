// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monostat/analytic.hpp"
#include "monostat/montecarlo.hpp"

namespace monostat::cli {

/// Exit statuses of the monostat tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitInvalid = 2,
    kExitDivergence = 3,
    kExitDisagreement = 4,
};

/// %.17g; round-trips every double.
std::string format_double(double x);
std::string format_grid(const std::vector<double>& grid);

struct RunManifest {
    std::string command;
    /// Fully resolved parameters, in insertion order.
    std::vector<std::pair<std::string, std::string>> params;
    std::uint64_t seed = 0;
    std::string version;
    /// Only written to the sidecar, so that the CSV itself stays a pure
    /// function of the parameters.
    std::string timestamp;

    void add(std::string key, std::string value);
    void add(std::string key, double value);
    /// `#`-prefixed lines without the timestamp.
    std::string header() const;
    /// key=value lines including the timestamp.
    std::string sidecar() const;
};

struct CsvTable {
    RunManifest manifest;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    /// Set when some estimator comparison failed; maps to kExitDisagreement.
    bool disagreement = false;

    std::string to_csv() const;
    /// Cell lookup by column name; throws std::out_of_range.
    const std::string& cell(std::size_t row, const std::string& column) const;
};

/// Simulation settings shared by chi-table and simulate. sample counts are
/// per realization.
struct SimOptions {
    std::uint64_t seed = 1;
    std::size_t samples = std::size_t{1} << 22;
    std::size_t segments = 16;
    std::size_t realizations = 8;
    double oversample = mc::kDefaultOversample;
    std::size_t workers = 1;
};

/// Rows in lambda-major, snr-minor order.
CsvTable cmd_alpha_sweep(const std::vector<double>& snr_grid,
                         const std::vector<double>& lambda_grid);

inline const std::vector<double> kDefaultAGrid = {0.0, 0.5, 1.0, 2.0, 3.0};
inline const std::vector<double> kDefaultBGrid = {0.0, 0.5, 1.0, 1.5, 2.0};

/// Rows in a-major, b-minor order. With simulate set, each cell is simulated
/// with P_Sigma = P_Delta = W = 1, P_x = 0, P_c = a, f_c = b / 2, and a cell
/// seed derived from (sim.seed, cell index).
CsvTable cmd_chi_table(const std::vector<double>& a_grid, const std::vector<double>& b_grid,
                       const SeriesTruncation& trunc, bool simulate, const SimOptions& sim,
                       std::size_t workers = 1);

/// Single row; the closed-form columns are filled only when P_c = 0.
CsvTable cmd_rss(double rho, double mu, const SignalPowers& powers, const SeriesTruncation& trunc);

/// One simulated operating point. alpha columns are filled when theta_s > 0.
CsvTable cmd_simulate(const SignalPowers& powers, const FlatSpectrumSetup& setup,
                      const TrackingGeometry& geometry, const SimOptions& sim,
                      const SeriesTruncation& trunc);

/// Writes the CSV to path (stdout when empty) and, for a file, the manifest
/// sidecar at path + ".manifest".
void write_output(const CsvTable& table, const std::string& path);

/// Full command-line entry point; returns the process exit status.
int run(int argc, char** argv);

}  // namespace monostat::cli
