// SPDX-License-Identifier: Apache-2.0
//
// tddmimo - link-level simulator for reciprocity-calibrated TDD massive MIMO
// Copyright (C) 2026 The tddmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "tddmimo/calibration.hpp"
#include "tddmimo/experiment.hpp"
#include "tddmimo/precoding.hpp"
#include "tddmimo/signal_oracle.hpp"

#include <benchmark/benchmark.h>

using namespace tddmimo;

namespace
{

Eigen::MatrixXcd rayleigh(Eigen::Index rows, Eigen::Index cols)
{
    Engine rng = make_stream(1, 0, StreamTag::Generic);
    Eigen::MatrixXcd h(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            h(r, c) = complex_gaussian(rng);
    return h;
}

void BM_ZeroForcing(benchmark::State &state)
{
    const auto ues = state.range(0);
    const Eigen::MatrixXcd h = rayleigh(ues, state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(zero_forcing(h).weights.data());
}
BENCHMARK(BM_ZeroForcing)->Args({4, 8})->Args({4, 16})->Args({40, 256});

void BM_CalibrateCluster(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const FrequencyGrid g = flat_grid();
    std::vector<TrxChain> chains;
    for (std::size_t i = 0; i < n; ++i)
        chains.push_back(TrxChain::ideal(g, 0.01 * static_cast<double>(i)));
    const Eigen::MatrixXcd h0 = rayleigh(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    Engine rng = make_stream(1, 0, StreamTag::Calibration);
    for (auto _ : state)
        benchmark::DoNotOptimize(calibrate_cluster(chains, h0, SignModel::Correct, 0.0, rng, 0).factors.data());
}
BENCHMARK(BM_CalibrateCluster)->Arg(8)->Arg(256);

void BM_PassbandChain(benchmark::State &state)
{
    PassbandConfig cfg;
    cfg.phi_t = 0.3;
    cfg.phi_r = 1.1;
    const auto filters = LinkFilters::unit(cfg.grid);
    const std::vector<cplx> x(16, cplx{0.6, -0.8});
    for (auto _ : state)
        benchmark::DoNotOptimize(passband_chain(x, cfg, filters).data());
}
BENCHMARK(BM_PassbandChain);

void BM_VerifyModel(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(verify_model(PassbandConfig{}, 10, 1).max_relative_error);
}
BENCHMARK(BM_VerifyModel)->Unit(benchmark::kMillisecond);

// One desk-preset trial of 200 steps.
void BM_DeskTrial(benchmark::State &state)
{
    RunConfig cfg;
    cfg.topology = LoTopology::FreeRunningPerTrx;
    cfg.trials = 1;
    cfg.horizon = 200;
    for (auto _ : state)
        benchmark::DoNotOptimize(run(cfg).rows.data());
}
BENCHMARK(BM_DeskTrial)->Unit(benchmark::kMillisecond);

void BM_PaperStep(benchmark::State &state)
{
    RunConfig cfg;
    cfg.scenario = paper_preset();
    cfg.topology = LoTopology::FreeRunningPerTrx;
    cfg.trials = 1;
    cfg.horizon = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(run(cfg).rows.data());
}
BENCHMARK(BM_PaperStep)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
