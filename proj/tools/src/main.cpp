// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#include "monostat_cli/commands.hpp"

int main(int argc, char** argv) { return monostat::cli::run(argc, argv); }
