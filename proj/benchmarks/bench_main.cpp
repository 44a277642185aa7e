#include <cmath>

#include <benchmark/benchmark.h>

#include "smsfluor/correl.hpp"
#include "smsfluor/counting.hpp"
#include "smsfluor/scenarios.hpp"
#include "smsfluor/spectrum.hpp"
#include "smsfluor/steady.hpp"

using namespace smsfluor;

namespace {

ModelSpec chain(int n)
{
    std::vector<double> profile(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) profile[static_cast<std::size_t>(r)] = 0.2 + 0.8 * std::sin(3.0 * (r + 1) / n);
    return diffusion_chain(n, profile, 0.3, 1.0, 0.1);
}

ModelSpec light_assisted_fixture(double detuning)
{
    RateTable gc = RateTable::Zero(2, 2);
    gc(0, 1) = 0.02;
    gc(1, 0) = 0.0015;
    return light_assisted({1.0, 10.0}, gc, 1.0, detuning);
}

}  // namespace

static void BM_BuildGenerator(benchmark::State& state)
{
    const auto spec = chain(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(build_generator(spec));
}
BENCHMARK(BM_BuildGenerator)->Arg(2)->Arg(4)->Arg(11);

static void BM_SteadyState(benchmark::State& state)
{
    const auto gen = build_generator(chain(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(steady_state(gen));
}
BENCHMARK(BM_SteadyState)->Arg(2)->Arg(4)->Arg(11);

static void BM_SpectrumSweep(benchmark::State& state)
{
    const StationaryModel m(chain(static_cast<int>(state.range(0))));
    const auto grid = linear_grid(-10.0, 10.0, 1001);
    for (auto _ : state) benchmark::DoNotOptimize(incoherent_spectrum(m, grid));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_SpectrumSweep)->Arg(2)->Arg(11)->Unit(benchmark::kMillisecond);

static void BM_G2(benchmark::State& state)
{
    const StationaryModel m(light_assisted_fixture(0.0));
    const auto grid = log_grid(1e-2, 1e5, 141);
    for (auto _ : state) benchmark::DoNotOptimize(g2(m, grid));
}
BENCHMARK(BM_G2)->Unit(benchmark::kMillisecond);

static void BM_CountingDistribution(benchmark::State& state)
{
    const CountingModel m(light_assisted_fixture(0.0));
    for (auto _ : state) benchmark::DoNotOptimize(pn(m, 100.0, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_CountingDistribution)->Arg(20)->Arg(80)->Unit(benchmark::kMillisecond);

static void BM_StationaryMandel(benchmark::State& state)
{
    const auto spec = light_assisted_fixture(30.0);
    for (auto _ : state) benchmark::DoNotOptimize(stationary_mandel(spec));
}
BENCHMARK(BM_StationaryMandel);

static void BM_MandelSweep(benchmark::State& state)
{
    const auto spec = light_assisted_fixture(0.0);
    const auto grid = linear_grid(0.0, 30.0, 121);
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mandel_sweep(spec, grid, threads));
}
BENCHMARK(BM_MandelSweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
