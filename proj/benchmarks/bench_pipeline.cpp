#include "rigidity/cohomology.hpp"
#include "rigidity/isometry.hpp"
#include "rigidity/twobridge.hpp"

#include <benchmark/benchmark.h>

using namespace rigidity;

static void BM_Classify(benchmark::State& state) {
    const Isometry a = embed(parabolic_translation(0.7, -1.3));
    for (auto _ : state) benchmark::DoNotOptimize(classify(a));
}
BENCHMARK(BM_Classify);

static void BM_TorusCocycleSpace(benchmark::State& state) {
    const auto ctx = torus_context({1.0, 0.0}, {0.3, 1.2}, static_cast<ModuleTag>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(cocycle_space(ctx).dim_h1);
}
BENCHMARK(BM_TorusCocycleSpace)->Arg(static_cast<int>(ModuleTag::r31))->Arg(static_cast<int>(ModuleTag::so41));

static void BM_RileyReps(benchmark::State& state) {
    const TwoBridgeKnot k(static_cast<int>(state.range(0)), 3);
    for (auto _ : state) benchmark::DoNotOptimize(riley_reps(k).size());
}
BENCHMARK(BM_RileyReps)->Arg(7)->Arg(17)->Arg(31);

static void BM_LimitSlope(benchmark::State& state) {
    const TwoBridgeKnot k(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(limit_slope(k).l.value);
}
BENCHMARK(BM_LimitSlope)->Args({5, 3})->Args({7, 3})->Args({13, 5})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
