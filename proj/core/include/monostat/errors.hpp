// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#pragma once

#include <stdexcept>
#include <string>

namespace monostat {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// |r| >= 1 where an autocorrelation of the ratio process diverges.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A series or quadrature failed its tolerance within its iteration cap.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inconsistent or invalid simulation / quadrature configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace monostat
