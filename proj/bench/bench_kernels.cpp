// Serial reference vs OpenMP for the sampling-heavy kernels. Both paths
// compute bit-identical results for the same worker count.

#include <benchmark/benchmark.h>

#include <cmath>

#include "singmc/estimate.hpp"
#include "singmc/parametric.hpp"

using namespace singmc;

namespace {

const Integrand kSmooth{3, [](std::span<const double> s) { return std::exp(-s[0] - s[1] - s[2]); }};

void BM_volterra(benchmark::State& state, Execution execution) {
    const AlphaVector alpha({0.5, 0.3, 0.7});
    EstimateOptions o;
    o.samples = static_cast<std::size_t>(state.range(0));
    o.workers = static_cast<std::size_t>(state.range(1));
    o.execution = execution;
    o.seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(estimate_volterra(kSmooth, alpha, o).estimate);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ball(benchmark::State& state, Execution execution) {
    const BallExponents e({-0.5, 0.3, 1.0});
    EstimateOptions o;
    o.samples = static_cast<std::size_t>(state.range(0));
    o.workers = static_cast<std::size_t>(state.range(1));
    o.execution = execution;
    o.seed = 2;
    for (auto _ : state) benchmark::DoNotOptimize(estimate_ball(kSmooth, e, o).estimate);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_parametric(benchmark::State& state, Execution execution) {
    const AlphaVector alpha({0.5, 0.5});
    const ParamIntegrand z{2, 1, [](std::span<const double> s, std::span<const double> t) {
                               return std::exp(-t[0] * (s[0] + s[1]));
                           }};
    const GridAxis axis{0.0, 1.0, 21};
    const auto grid = ThetaGrid::from_axes(std::span(&axis, 1));
    ParamOptions o;
    o.samples = static_cast<std::size_t>(state.range(0));
    o.workers = static_cast<std::size_t>(state.range(1));
    o.execution = execution;
    o.seed = 3;
    for (auto _ : state) benchmark::DoNotOptimize(estimate_parametric(z, alpha, grid, o).sup_quantile);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_volterra, serial, Execution::serial)->Args({200000, 1})->Args({200000, 4});
BENCHMARK_CAPTURE(BM_volterra, openmp, Execution::openmp)->Args({200000, 1})->Args({200000, 4});
BENCHMARK_CAPTURE(BM_ball, serial, Execution::serial)->Args({200000, 4});
BENCHMARK_CAPTURE(BM_ball, openmp, Execution::openmp)->Args({200000, 4});
BENCHMARK_CAPTURE(BM_parametric, serial, Execution::serial)->Args({20000, 4});
BENCHMARK_CAPTURE(BM_parametric, openmp, Execution::openmp)->Args({20000, 4});

BENCHMARK_MAIN();
