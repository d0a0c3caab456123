#include <benchmark/benchmark.h>

#include "abcgf/greens.hpp"

namespace {

void BM_GreensWindow(benchmark::State& state) {
    const abcgf::PhysicalParams p{1.0 / 137.0, 0.3, 0.5};
    const abcgf::SpacePoint b{2.0, 1.0, 0.0};
    const abcgf::SpacePoint a{1.0, 2.0, 1.5};
    abcgf::TruncationSpec trunc;
    trunc.q_max = int(state.range(0));
    trunc.k_max = int(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(abcgf::greens_function(b, a, p, trunc));
}
BENCHMARK(BM_GreensWindow)->Args({4, 5})->Args({8, 10})->Args({20, 25});

void BM_BoundEnergies(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(abcgf::bound_energies({0, 0}, 0.3, 0.3, 10));
}
BENCHMARK(BM_BoundEnergies);

}  // namespace

BENCHMARK_MAIN();
