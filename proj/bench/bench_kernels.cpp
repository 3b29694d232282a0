// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "uwrelay/fitmodels.hpp"
#include "uwrelay/kernels.hpp"
#include "uwrelay/linkbudget.hpp"
#include "uwrelay/oracle.hpp"

using namespace uwrelay;

namespace {

std::vector<double> uniform(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 100.0);
    std::vector<double> v(n);
    for (auto& x : v) {
        x = u(rng);
    }
    return v;
}

template <bool Parallel>
void BM_ProductArgmin(benchmark::State& state) {
    const auto a = uniform(static_cast<std::size_t>(state.range(0)), 1);
    const auto n = uniform(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? kernels::parallel::product_argmin(a, n, 12.5)
                                          : kernels::serial::product_argmin(a, n, 12.5));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_RelayCurve(benchmark::State& state) {
    const auto h = uniform(static_cast<std::size_t>(state.range(0)) + 1, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? kernels::parallel::relay_energy_curve(h, 1.0)
                                          : kernels::serial::relay_energy_curve(h, 1.0));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Execution Exec>
void BM_HopPhysicsSweep(benchmark::State& state) {
    const ChannelModel ch(Environment{}, {}, Exec);
    const auto d = log_spaced(1.0, 100.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_channel(ch, d, Exec));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <Execution Exec>
void BM_OracleArgmin(benchmark::State& state) {
    for (auto _ : state) {
        const ExactModel m{ChannelModel(Environment{}, {}, Exec), Exec};
        benchmark::DoNotOptimize(grid_argmin_relay({30.0, 15.0, 1.0}, m, 30.0 / 200.0));
    }
}

}  // namespace

BENCHMARK(BM_ProductArgmin<false>)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(BM_ProductArgmin<true>)->Arg(1 << 14)->Arg(1 << 17);
BENCHMARK(BM_RelayCurve<false>)->Arg(400)->Arg(1 << 16);
BENCHMARK(BM_RelayCurve<true>)->Arg(400)->Arg(1 << 16);
BENCHMARK(BM_HopPhysicsSweep<Execution::serial>)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HopPhysicsSweep<Execution::parallel>)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleArgmin<Execution::serial>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleArgmin<Execution::parallel>)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
