/*
* Copyright (C) 2026 phagesim contributors
*
* Licensed under the Apache License, Version 2.0 (the "License");
* you may not use this file except in compliance with the License.
* You may obtain a copy of the License at
*
*     http://www.apache.org/licenses/LICENSE-2.0
*
* Unless required by applicable law or agreed to in writing, software
* distributed under the License is distributed on an "AS IS" BASIS,
* WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
* See the License for the specific language governing permissions and
* limitations under the License.
*/
#include "phagesim/dde.hpp"
#include "phagesim/history.hpp"
#include "phagesim/sdde.hpp"
#include "phagesim/sigma.hpp"

#include <benchmark/benchmark.h>

namespace
{

phagesim::Parameters reference(double eps)
{
    phagesim::Parameters p;
    p.alpha = 0.5;
    p.k1    = 0.1;
    p.k2    = 0.05;
    p.d     = 20.0;
    p.m     = 1.0;
    p.b     = 10.0;
    p.mu    = 0.2;
    p.tau   = 1.0;
    p.M     = 100.0;
    p.eps   = eps;
    return p;
}

void bm_sigma(benchmark::State& state)
{
    const phagesim::SigmaFn sigma(100.0);
    double x = 99.0, acc = 0.0;
    for (auto _ : state) {
        acc += sigma(x) + sigma.derivative(x);
        x = x < 102.0 ? x + 1e-3 : 99.0;
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(bm_sigma);

void bm_integrate(benchmark::State& state)
{
    const auto p    = reference(0.0);
    const auto hist = phagesim::History::constant(0.5, 10.0, 1.0, 1.0);
    const int K     = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto traj = phagesim::integrate(p, hist, 50.0, K);
        benchmark::DoNotOptimize(traj.states().back());
    }
    state.SetItemsProcessed(state.iterations() * 50 * K);
}
BENCHMARK(bm_integrate)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void bm_sample_path(benchmark::State& state)
{
    const auto p    = reference(0.01);
    const auto hist = phagesim::History::constant(0.5, 10.0, 1.0, 1.0);
    const auto scheme =
        state.range(0) == 0 ? phagesim::Scheme::stratonovich_heun : phagesim::Scheme::ito_euler_corrected;
    std::uint64_t path = 0;
    for (auto _ : state) {
        auto traj = phagesim::sample_path(p, hist, {1, 64, 50.0, scheme}, path++);
        benchmark::DoNotOptimize(traj.states().back());
    }
    state.SetLabel(std::string(phagesim::to_string(scheme)));
    state.SetItemsProcessed(state.iterations() * 50 * 64);
}
BENCHMARK(bm_sample_path)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void bm_ensemble(benchmark::State& state)
{
    const auto p    = reference(0.01);
    const auto hist = phagesim::History::constant(0.5, 10.0, 1.0, 1.0);
    const phagesim::State e0{0.0, 0.0, 20.0};
    for (auto _ : state) {
        auto stats = phagesim::ensemble(p, hist, {7, 64, 50.0}, 100, e0, 30.0, 50.0, 0.1,
                                        static_cast<unsigned>(state.range(0)));
        benchmark::DoNotOptimize(stats.exceed_count);
    }
}
BENCHMARK(bm_ensemble)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
