#include <benchmark/benchmark.h>

#include "abcgf/radial.hpp"

namespace {

const abcgf::PhysicalParams kParams{1.0 / 137.0, 0.3, 0.9};
const abcgf::ChannelIndex kChannel{0, 0};

void BM_HKernel(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(abcgf::h_kernel(kChannel, kParams, 2.0, 1.0, 0.7));
}
BENCHMARK(BM_HKernel);

void BM_G0ZRep(benchmark::State& state) {
    abcgf::QuadSpec spec;
    for (auto _ : state)
        benchmark::DoNotOptimize(abcgf::g0_z_rep(kChannel, kParams, 2.0, 1.0, spec));
}
BENCHMARK(BM_G0ZRep);

void BM_RadialClosed(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(abcgf::radial_closed(kChannel, kParams, 2.0, 1.0));
}
BENCHMARK(BM_RadialClosed);

void BM_RadialIntegral(benchmark::State& state) {
    abcgf::QuadSpec spec;
    for (auto _ : state)
        benchmark::DoNotOptimize(abcgf::radial_integral(kChannel, kParams, 2.0, 1.0, spec));
}
BENCHMARK(BM_RadialIntegral);

}  // namespace
