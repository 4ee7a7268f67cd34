#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ivlingam/hsic.hpp"
#include "ivlingam/lingam.hpp"
#include "ivlingam/simulate.hpp"

using namespace ivlingam;

namespace {

std::vector<double> draws(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 e(seed);
    std::student_t_distribution<double> t(5.0);
    std::vector<double> v(n);
    for (auto& x : v) x = t(e);
    return v;
}

void BM_MedianHeuristic(benchmark::State& state) {
    const auto x = draws(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(median_heuristic(x));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MedianHeuristic)->RangeMultiplier(2)->Range(128, 8192)->Complexity();

void BM_HsicStatistic(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = draws(n, 1);
    const auto y = draws(n, 2);
    for (auto _ : state) benchmark::DoNotOptimize(hsic_statistic(x, y));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HsicStatistic)->RangeMultiplier(2)->Range(128, 2048)->Complexity(benchmark::oNSquared);

void BM_HsicStreaming(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = draws(n, 1);
    const auto y = draws(n, 2);
    const GramMatrix k = GramMatrix::gaussian(x, median_heuristic(x));
    const double h = median_heuristic(y);
    for (auto _ : state) benchmark::DoNotOptimize(hsic_statistic(k, y, h));
}
BENCHMARK(BM_HsicStreaming)->Arg(500)->Arg(2000);

void BM_DirectLingam(benchmark::State& state) {
    SimulationSpec spec;
    spec.n = static_cast<std::size_t>(state.range(0));
    spec.alpha_zy = 0.3;
    const Dataset d = generate(spec, RandomSource(1));
    for (auto _ : state) benchmark::DoNotOptimize(direct_lingam(d));
}
BENCHMARK(BM_DirectLingam)->Arg(100)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace
