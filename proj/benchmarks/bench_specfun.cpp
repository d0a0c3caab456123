#include <benchmark/benchmark.h>

#include "abcgf/specfun.hpp"

namespace {

void BM_BesselILogSeries(benchmark::State& state) {
    const double x = double(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(abcgf::bessel_i_log(abcgf::RealOrder(2.4), x));
}
BENCHMARK(BM_BesselILogSeries)->Arg(1)->Arg(10)->Arg(100)->Arg(10000);

void BM_WhittakerW(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(abcgf::whittaker_w_log(0.05, 0.8, 1.7));
}
BENCHMARK(BM_WhittakerW);

void BM_WhittakerM(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(abcgf::whittaker_m_log(0.05, 0.8, 0.9));
}
BENCHMARK(BM_WhittakerM);

void BM_JacobiP(benchmark::State& state) {
    const int q = int(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(abcgf::jacobi_p(q, 1.3, 0.42));
}
BENCHMARK(BM_JacobiP)->Arg(5)->Arg(20)->Arg(60);

}  // namespace
