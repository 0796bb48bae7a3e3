// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>
#include <new>
#include <stdexcept>

namespace monostat::detail {
namespace {

// The FFTW planner is not reentrant; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

void inverse_dft(std::vector<std::complex<double>>& data) {
    if (data.empty()) return;
    // Plans depend on buffer alignment; a SIMD-aligned scratch buffer keeps
    // the chosen codelets, and hence the rounding, identical on every call.
    const std::size_t n = data.size();
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, data.data(), sizeof(fftw_complex) * n);
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (plan == nullptr) {
        fftw_free(buf);
        throw std::runtime_error("inverse_dft: FFTW planning failed");
    }
    fftw_execute(plan);
    std::memcpy(static_cast<void*>(data.data()), buf, sizeof(fftw_complex) * n);
    {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(buf);
}

}  // namespace monostat::detail
