/*
 * Copyright 2026 The Frechet Oracle Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *  http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
// Serial against OpenMP variants of the hot kernels. The serial runs are
// the reference; outputs are compared once per fixture before timing.

#include "frechet/cover.hpp"
#include "frechet/distance.hpp"
#include "frechet/grid.hpp"
#include "frechet/streaming.hpp"

#include <benchmark/benchmark.h>

#include <cstdlib>
#include <random>

using namespace frechet;

namespace {

Curve walk(std::size_t m, std::size_t d, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<double> c(m * d);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t a = 0; a < d; ++a) c[i * d + a] = (i ? c[(i - 1) * d + a] : 0) + g(rng);
    return Curve(d, std::move(c));
}

void dfd(benchmark::State& st, bool parallel)
{
    const auto n = static_cast<std::size_t>(st.range(0));
    const auto p = walk(n, 2, 1), q = walk(n, 2, 2);
    if (discrete_frechet(p, q) != discrete_frechet_parallel(p, q)) std::abort();
    for (auto _ : st)
        benchmark::DoNotOptimize(parallel ? discrete_frechet_parallel(p, q) : discrete_frechet(p, q));
    st.SetComplexityN(static_cast<long>(n * n));
}

void enumerate(benchmark::State& st, bool parallel)
{
    const auto m = static_cast<std::size_t>(st.range(0));
    const auto p = walk(m, 1, 3);
    const double r = 1.5;
    const auto g = GridSpec::make(0.25, r, 1);
    if (enumerate_grid_curves(p, 2, g, r, true, false) != enumerate_grid_curves(p, 2, g, r, true, true))
        std::abort();
    for (auto _ : st) benchmark::DoNotOptimize(enumerate_grid_curves(p, 2, g, r, true, parallel));
}

void extend(benchmark::State& st, bool parallel)
{
    const auto m = static_cast<std::size_t>(st.range(0));
    const auto p = walk(m, 1, 4);
    for (auto _ : st) {
        LayeredCover c(2, 1.5, 0.25, 1);
        for (std::size_t i = 0; i < m; ++i) c.extend(p[i], parallel);
        benchmark::DoNotOptimize(c.smallest(2));
    }
}

} // namespace

BENCHMARK_CAPTURE(dfd, serial, false)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK_CAPTURE(dfd, parallel, true)->RangeMultiplier(4)->Range(64, 4096);
BENCHMARK_CAPTURE(enumerate, serial, false)->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(enumerate, parallel, true)->Arg(8)->Arg(32);
BENCHMARK_CAPTURE(extend, serial, false)->Arg(16)->Arg(64);
BENCHMARK_CAPTURE(extend, parallel, true)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
