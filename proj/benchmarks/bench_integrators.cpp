#include <pint/integrators.hpp>
#include <pint/problems.hpp>

#include <benchmark/benchmark.h>

using namespace pint;

static void BM_Rk4Step(benchmark::State& state)
{
    const BenchmarkCase bench = lorenz();
    StateVector u = bench.system.initial_value();
    const double h = bench.mesh.fine_step();
    for (auto _ : state) {
        benchmark::DoNotOptimize(u = rk4_step(bench.system, u, 0.0, h));
        // Keep the orbit bounded across millions of iterations.
        if (!u.is_finite()) u = bench.system.initial_value();
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Rk4Step);

// Fine propagation over one sub-interval, per benchmark problem.
static void BM_FineSubinterval(benchmark::State& state)
{
    const BenchmarkCase bench = *make_case(case_names()[static_cast<std::size_t>(state.range(0))]);
    const Propagator fine = Propagator::fine(bench.system, bench.mesh);
    const double t1 = bench.mesh.boundary(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate(fine, bench.system.initial_value(), bench.mesh.t0(), t1));
    }
    state.SetLabel(bench.name);
}
BENCHMARK(BM_FineSubinterval)->DenseRange(0, 4);

static void BM_SerialFineSolution(benchmark::State& state)
{
    const BenchmarkCase bench = brusselator();
    for (auto _ : state) benchmark::DoNotOptimize(serial_fine_boundaries(bench.system, bench.mesh));
}
BENCHMARK(BM_SerialFineSolution)->Unit(benchmark::kMillisecond);
