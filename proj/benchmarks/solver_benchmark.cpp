#include <benchmark/benchmark.h>

#include "irsbf/baselines.hpp"
#include "irsbf/channel_model.hpp"
#include "irsbf/solver.hpp"

namespace {

irsbf::ChannelSet instance(std::size_t n) {
    irsbf::RngStream rng(7, n);
    return irsbf::sample_channels(rng, irsbf::Geometry{}, n);
}

void BM_SolveBin(benchmark::State& state) {
    const auto channels = instance(static_cast<std::size_t>(state.range(0)));
    const int k = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(irsbf::solve(channels, k, irsbf::SortKind::bin));
    }
    state.SetComplexityN(state.range(0));
}

void BM_SolveComparison(benchmark::State& state) {
    const auto channels = instance(static_cast<std::size_t>(state.range(0)));
    const int k = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(irsbf::solve(channels, k, irsbf::SortKind::comparison));
    }
    state.SetComplexityN(state.range(0));
}

void BM_SolveReduced(benchmark::State& state) {
    const auto channels = instance(static_cast<std::size_t>(state.range(0)));
    const int k = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(irsbf::solve_reduced(channels, k));
    }
    state.SetComplexityN(state.range(0));
}

void BM_ClosestPointProjection(benchmark::State& state) {
    const auto channels = instance(static_cast<std::size_t>(state.range(0)));
    const int k = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(irsbf::closest_point_projection(channels, k));
    }
}

void BM_BlockCoordinateDescent(benchmark::State& state) {
    const auto channels = instance(static_cast<std::size_t>(state.range(0)));
    const int k = static_cast<int>(state.range(1));
    const auto init = irsbf::PhaseConfig::identity(k, channels.size());
    for (auto _ : state) {
        benchmark::DoNotOptimize(irsbf::block_coordinate_descent(channels, init));
    }
}

void BM_BruteForce(benchmark::State& state) {
    const auto channels = instance(static_cast<std::size_t>(state.range(0)));
    const int k = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(irsbf::brute_force(channels, k));
    }
}

void sizes(benchmark::internal::Benchmark* b) {
    for (int k : {2, 3, 8}) {
        for (long n = 100; n <= 1'000'000; n *= 10) {
            b->Args({n, k});
        }
    }
}

} // namespace

BENCHMARK(BM_SolveBin)->Apply(sizes)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SolveComparison)->Apply(sizes)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SolveReduced)->Apply(sizes)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ClosestPointProjection)->Args({100, 2})->Args({100, 3})->Args({100000, 2});
BENCHMARK(BM_BlockCoordinateDescent)->Args({100, 2})->Args({100, 3})->Args({10000, 2});
BENCHMARK(BM_BruteForce)->Args({8, 2})->Args({8, 4})->Args({6, 8})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
