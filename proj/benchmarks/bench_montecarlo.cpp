// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The monostat Authors

#include <benchmark/benchmark.h>

#include "monostat/montecarlo.hpp"

namespace mc = monostat::mc;

namespace {

void BM_GenBandlimitedGaussian(benchmark::State& state) {
    const auto cfg = mc::SimConfig::for_setup({1.0, 0.0}, 8.0,
                                              static_cast<std::size_t>(state.range(0)), 1);
    std::uint64_t id = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::gen_bandlimited_gaussian(1.0, 1.0, cfg, ++id));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenBandlimitedGaussian)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_EstimateChi(benchmark::State& state) {
    const monostat::FlatSpectrumSetup setup{1.0, 0.25};
    const monostat::SignalPowers p{1.0, 0.5, 0.5, 1.0};
    const auto cfg = mc::SimConfig::for_setup(setup, 8.0, std::size_t{1} << 18, 3, 8, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mc::estimate_chi(p, {1.0, 0.25, std::nullopt}, setup, cfg));
    }
}
BENCHMARK(BM_EstimateChi)->Unit(benchmark::kMillisecond);

}  // namespace
