#include "adaptem/brownian.h"
#include "adaptem/examples.h"
#include "adaptem/log.h"
#include "adaptem/montecarlo.h"
#include "adaptem/rng.h"
#include "adaptem/solver.h"

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

using namespace adaptem;

namespace {

void BM_StepSize(benchmark::State& state) {
    const auto surface = Hypersurface::points1d({0.0, 1.0});
    const auto params = StepSizeParams::make(std::ldexp(1.0, -6), 0.4, 1.0, false);
    rng::SplitMix g(1);
    std::vector<double> xs(1024);
    for (double& x : xs) x = g.uniform(-1.0, 2.0);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(step_size(std::span<const double>(&xs[i++ & 1023], 1), params, surface));
    }
}
BENCHMARK(BM_StepSize);

void BM_BrownianForward(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        BrownianPath path(1, seed++);
        for (std::size_t k = 1; k <= n; ++k) benchmark::DoNotOptimize(path.query(double(k) / double(n)));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_BrownianForward)->Arg(256)->Arg(4096);

void BM_BrownianBridgeRefine(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        BrownianPath path(1, seed++);
        for (std::size_t k = 1; k <= n; ++k) (void)path.query(double(2 * k) / double(2 * n));
        for (std::size_t k = 0; k < n; ++k) benchmark::DoNotOptimize(path.query(double(2 * k + 1) / double(2 * n)));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_BrownianBridgeRefine)->Arg(256)->Arg(4096);

void BM_SimulateAdaptiveExample1(benchmark::State& state) {
    set_log_level(LogLevel::off);
    const auto e = example1();
    const auto params = StepSizeParams::make(std::ldexp(1.0, -static_cast<int>(state.range(0))), e.problem.eps0,
                                             e.problem.sigma_sup, false);
    std::uint64_t seed = 0;
    std::int64_t steps = 0;
    for (auto _ : state) {
        BrownianPath path(1, seed++);
        const auto traj = simulate_adaptive(e.problem, params, path);
        steps += static_cast<std::int64_t>(traj.step_count);
        benchmark::DoNotOptimize(traj.states.back());
    }
    state.SetItemsProcessed(steps);
}
BENCHMARK(BM_SimulateAdaptiveExample1)->Arg(4)->Arg(6)->Arg(8);

void BM_CoupledSampleExample3(benchmark::State& state) {
    set_log_level(LogLevel::off);
    const auto e = example3();
    const double delta = std::ldexp(1.0, -static_cast<int>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(coupled_difference_sample(e.problem, delta, i++, 1).sq_diff);
}
BENCHMARK(BM_CoupledSampleExample3)->Arg(4)->Arg(6);

} // namespace

BENCHMARK_MAIN();
