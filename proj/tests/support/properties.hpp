// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

// Property checks over hand-rolled random generators. Shared by the unit
// suites (one gtest per property) and the acceptance runner.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "monostat/analytic.hpp"

namespace monostat::testing {

/// Deterministic generator of valid inputs.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi);
    /// 10^u with u uniform on [lo_exp, hi_exp].
    double log_uniform(double lo_exp, double hi_exp);
    int integer(int lo, int hi);
    /// Correlation with |r| uniform on [0, max_mag] and uniform phase.
    CorrelationCoefficient correlation(double max_mag);
    /// Powers with each Gaussian power log-uniform and a carrier that is
    /// exactly zero one time in four.
    SignalPowers powers();

private:
    std::mt19937_64 engine_;
};

struct PropertyReport {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;

    bool passed() const { return failures == 0 && cases > 0; }
};

PropertyReport check_kummer_identity(std::uint64_t seed, std::size_t cases);
PropertyReport check_alpha_bounds(std::uint64_t seed, std::size_t cases);
PropertyReport check_carrier_dominance();
PropertyReport check_chi_positivity(std::uint64_t seed, std::size_t cases);
PropertyReport check_chi_b_independence();
PropertyReport check_hermitian_symmetry(std::uint64_t seed, std::size_t cases);
PropertyReport check_phase_covariance(std::uint64_t seed, std::size_t cases);
PropertyReport check_sweep_round_trip(std::uint64_t seed, std::size_t cases);
PropertyReport check_sinc_zero_branch();

/// Every property above with the case counts used by the acceptance run.
std::vector<PropertyReport> run_all_properties(std::uint64_t seed);

}  // namespace monostat::testing
