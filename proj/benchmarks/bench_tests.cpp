#include <benchmark/benchmark.h>

#include "ivlingam/extests.hpp"
#include "ivlingam/simulate.hpp"

using namespace ivlingam;

namespace {

Dataset data(std::size_t n) {
    SimulationSpec spec;
    spec.n = n;
    spec.alpha_zy = 0.2;
    return generate(spec, RandomSource(3));
}

void BM_BootstrapReplicates(benchmark::State& state) {
    const Dataset d = data(500);
    const auto B = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(bootstrap_replicates(d, B, RandomSource(1)));
}
BENCHMARK(BM_BootstrapReplicates)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_LikelihoodRatio(benchmark::State& state) {
    const Dataset d = data(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(likelihood_ratio_test(d));
}
BENCHMARK(BM_LikelihoodRatio)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_HsicExclusion(benchmark::State& state) {
    const Dataset d = data(500);
    for (auto _ : state) benchmark::DoNotOptimize(hsic_exclusion_test(d, 200, RandomSource(1)));
}
BENCHMARK(BM_HsicExclusion)->Unit(benchmark::kMillisecond);

// One Monte Carlo replicate of the power study: all five tests, B = R = 200.
void BM_RunAll(benchmark::State& state) {
    const Dataset d = data(500);
    ExclusionConfig config;
    config.bootstrap = 200;
    config.permutations = 200;
    for (auto _ : state) benchmark::DoNotOptimize(run_all(d, config, RandomSource(1)));
}
BENCHMARK(BM_RunAll)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace
