#include <benchmark/benchmark.h>

#include "osd/asymmetric.hpp"
#include "osd/baseline.hpp"
#include "osd/bench.hpp"
#include "osd/compressed.hpp"
#include "osd/generators.hpp"
#include "osd/homomorphism.hpp"

namespace {

using namespace osd;

void BM_BaselineSigma(benchmark::State& state) {
    const auto s = generate_sigma(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ta_unify(s).verdict);
    state.counters["equations"] = static_cast<double>(s.size());
}
BENCHMARK(BM_BaselineSigma)->DenseRange(0, 8)->Unit(benchmark::kMicrosecond);

void BM_CompressedSigma(benchmark::State& state) {
    const auto s = generate_sigma(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(decide(s).verdict);
    state.counters["equations"] = static_cast<double>(s.size());
}
BENCHMARK(BM_CompressedSigma)->DenseRange(0, 14, 2)->Unit(benchmark::kMicrosecond);

void BM_HomSigma(benchmark::State& state) {
    const auto typed = typecheck(generate_sigma(static_cast<unsigned>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(decide_hom(*typed).verdict);
}
BENCHMARK(BM_HomSigma)->DenseRange(0, 14, 2)->Unit(benchmark::kMicrosecond);

void BM_AsymSigmaPrime(benchmark::State& state) {
    const auto s = generate_sigma_prime(static_cast<unsigned>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(asym_unify(s).verdict);
}
BENCHMARK(BM_AsymSigmaPrime)->DenseRange(0, 6)->Unit(benchmark::kMicrosecond);

// Corpus sweep on one thread against the OpenMP worker pool.
void BM_CorpusSweep(benchmark::State& state) {
    BenchConfig config;
    config.families = {Family::Random};
    config.algorithms = {Algorithm::Baseline, Algorithm::Compressed, Algorithm::Hom};
    config.max_n = 199;
    config.parallel = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_bench(config).rows.size());
}
BENCHMARK(BM_CorpusSweep)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
