// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#include <benchmark/benchmark.h>

#include <complex>

#include "monostat/analytic.hpp"
#include "monostat/specfun.hpp"

namespace {

void BM_Hyp1F1SeriesPattern(benchmark::State& state) {
    const double k = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(monostat::specfun::hyp1f1({11.0 + k, 11.0, -2.0}));
    }
}
BENCHMARK(BM_Hyp1F1SeriesPattern)->Arg(0)->Arg(50)->Arg(400);

void BM_SincPowerCoeff(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(monostat::sinc_power_coeff(n, 0.3 * n));
    }
}
BENCHMARK(BM_SincPowerCoeff)->Arg(2)->Arg(12)->Arg(40);

void BM_RssGeneral(benchmark::State& state) {
    const double mag = static_cast<double>(state.range(0)) / 100.0;
    const auto r = monostat::CorrelationCoefficient::from_complex(std::polar(mag, 0.7));
    const monostat::SignalPowers p{1.0, 0.5, 1.0, 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(monostat::rss_general(r, p));
    }
}
BENCHMARK(BM_RssGeneral)->Arg(30)->Arg(90)->Arg(99);

void BM_Chi(benchmark::State& state) {
    const double a = static_cast<double>(state.range(0)) / 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(monostat::chi(a, 0.5));
    }
}
BENCHMARK(BM_Chi)->Arg(0)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
