// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#pragma once

#include <complex>
#include <vector>

namespace monostat::detail {

/// In-place unnormalized inverse DFT: x_n = sum_k X_k e^{+2 pi i k n / N}.
void inverse_dft(std::vector<std::complex<double>>& data);

}  // namespace monostat::detail
