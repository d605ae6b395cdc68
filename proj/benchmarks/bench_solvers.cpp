#include <pint/experiments.hpp>
#include <pint/parareal.hpp>
#include <pint/problems.hpp>
#include <pint/stochastic_parareal.hpp>

#include <benchmark/benchmark.h>

using namespace pint;

static void BM_Parareal(benchmark::State& state)
{
    const BenchmarkCase bench = brusselator();
    SolverConfig c = case_config(bench);
    c.worker_count = static_cast<std::size_t>(state.range(0));
    std::size_t iterations = 0;
    for (auto _ : state) {
        const RunResult r = run_parareal(bench.system, bench.mesh, c);
        iterations = r.iterations;
        benchmark::DoNotOptimize(r.boundary_values.data());
    }
    state.counters["k"] = static_cast<double>(iterations);
}
BENCHMARK(BM_Parareal)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

// Cost grows roughly linearly in M: every unconverged boundary runs M fine solves.
static void BM_StochasticParareal(benchmark::State& state)
{
    const BenchmarkCase bench = brusselator();
    SolverConfig c = case_config(bench);
    c.n_samples = static_cast<std::size_t>(state.range(0));
    c.sampling_rule = SamplingRule::Rule2;
    c.rng_seed = 42;
    std::size_t iterations = 0;
    for (auto _ : state) {
        const RunResult r = run_stochastic_parareal(bench.system, bench.mesh, c);
        iterations = r.iterations;
        benchmark::DoNotOptimize(r.boundary_values.data());
    }
    state.counters["k"] = static_cast<double>(iterations);
}
BENCHMARK(BM_StochasticParareal)->Arg(1)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);
