#include <pint/sampling.hpp>

#include <benchmark/benchmark.h>

#include <cstdint>

using namespace pint;

namespace {

SamplingMoments lorenz_like_moments()
{
    Matrix r(3, 3);
    r << 1.0, 0.6, -0.2, 0.6, 1.0, 0.1, -0.2, 0.1, 1.0;
    return {StateVector{1.0, 2.0, 3.0}, StateVector{0.1, 0.2, 0.05}, r};
}

} // namespace

static void BM_SplitMix64(benchmark::State& state)
{
    RngStream rng(7);
    for (auto _ : state) benchmark::DoNotOptimize(rng.next_u64());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SplitMix64);

static void BM_Normal(benchmark::State& state)
{
    RngStream rng(7);
    for (auto _ : state) benchmark::DoNotOptimize(rng.normal());
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Normal);

static void BM_SampleGaussian(benchmark::State& state)
{
    const SamplingMoments m = lorenz_like_moments();
    const auto n = static_cast<std::size_t>(state.range(0));
    RngStream rng(11);
    for (auto _ : state) benchmark::DoNotOptimize(sample_gaussian(m, n, rng));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n - 1));
}
BENCHMARK(BM_SampleGaussian)->RangeMultiplier(4)->Range(4, 256);

static void BM_SampleCopula(benchmark::State& state)
{
    const SamplingMoments m = lorenz_like_moments();
    const auto n = static_cast<std::size_t>(state.range(0));
    RngStream rng(11);
    for (auto _ : state) benchmark::DoNotOptimize(sample_tcopula(m, n, rng));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n - 1));
}
BENCHMARK(BM_SampleCopula)->RangeMultiplier(4)->Range(4, 256);

static void BM_PearsonAndFactor(benchmark::State& state)
{
    const SamplingMoments m = lorenz_like_moments();
    RngStream rng(3);
    const std::vector<StateVector> batch = sample_gaussian(m, static_cast<std::size_t>(state.range(0)), rng);
    for (auto _ : state) benchmark::DoNotOptimize(correlation_factor(pearson_correlation(batch)));
}
BENCHMARK(BM_PearsonAndFactor)->Arg(10)->Arg(100);
