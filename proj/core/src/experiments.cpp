#include "pint/experiments.hpp"

#include "pint/errors.hpp"
#include "pint/executor.hpp"
#include "pint/integrators.hpp"
#include "pint/parareal.hpp"
#include "pint/stochastic_parareal.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace pint {

double KDistribution::probability(std::size_t k) const noexcept
{
    if (n_realizations == 0) return 0.0;
    const auto it = counts.find(k);
    return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(n_realizations);
}

double KDistribution::probability_below(std::size_t k) const noexcept
{
    if (n_realizations == 0) return 0.0;
    std::size_t below = 0;
    for (const auto& [iterations, count] : counts) {
        if (iterations < k) below += count;
    }
    return static_cast<double>(below) / static_cast<double>(n_realizations);
}

double KDistribution::expectation() const noexcept
{
    double e = 0.0;
    for (const auto& [k, count] : counts) e += static_cast<double>(k) * probability(k);
    return e;
}

double KDistribution::standard_deviation() const noexcept
{
    const double e = expectation();
    double v = 0.0;
    for (const auto& [k, count] : counts) {
        const double dk = static_cast<double>(k) - e;
        v += dk * dk * probability(k);
    }
    return std::sqrt(v);
}

double ErrorProfile::max_two_sd() const noexcept
{
    double m = 0.0;
    for (const StateVector& s : two_sd) m = std::max(m, norm_inf(s));
    return m;
}

SolverConfig case_config(const BenchmarkCase& bench)
{
    SolverConfig config;
    config.tolerance = bench.tolerance;
    return config;
}

namespace {

struct Outcome {
    std::optional<RunResult> result;
    bool blown_up = false;
};

Outcome run_realization(const BenchmarkCase& bench, SolverConfig config, std::uint64_t seed)
{
    config.rng_seed = seed;
    config.worker_count = 1;
    try {
        return {run_stochastic_parareal(bench.system, bench.mesh, config), false};
    } catch (const BlowUpError&) {
        return {std::nullopt, true};
    }
}

void check_realizations(std::size_t n)
{
    if (n == 0) {
        throw std::invalid_argument("experiments: n_realizations must be >= 1");
    }
}

/// Runs realisations in chunks so at most `chunk` full results are alive;
/// `consume` sees them in seed order.
template <typename Consume>
void for_each_realization(const BenchmarkCase& bench, const SolverConfig& config, std::size_t n,
                          std::uint64_t base_seed, std::size_t chunk, Consume&& consume)
{
    const Executor executor(config.worker_count);
    for (std::size_t start = 0; start < n; start += chunk) {
        const std::size_t count = std::min(chunk, n - start);
        std::vector<Outcome> outcomes(count);
        executor.parallel_for(count, [&](std::size_t i) {
            outcomes[i] = run_realization(bench, config, base_seed + start + i);
        });
        for (Outcome& o : outcomes) consume(o);
    }
}

} // namespace

KDistribution estimate_k_distribution(const BenchmarkCase& bench, const SolverConfig& config,
                                      std::size_t n_realizations, std::uint64_t base_seed)
{
    check_realizations(n_realizations);
    KDistribution dist;
    dist.n_realizations = n_realizations;
    dist.kd_reference = bench.expected_kd;
    const std::size_t chunk = std::max<std::size_t>(64, 8 * config.worker_count);
    for_each_realization(bench, config, n_realizations, base_seed, chunk, [&](const Outcome& o) {
        if (o.blown_up) {
            ++dist.blown_up;
        } else if (!o.result->converged) {
            ++dist.unconverged;
        } else {
            ++dist.counts[o.result->iterations];
        }
    });
    return dist;
}

std::vector<CurvePoint> expectation_curve(const BenchmarkCase& bench, const SolverConfig& config,
                                          std::span<const std::size_t> sample_counts, std::size_t n_realizations,
                                          std::uint64_t base_seed)
{
    std::vector<CurvePoint> curve;
    curve.reserve(sample_counts.size());
    for (const std::size_t m : sample_counts) {
        SolverConfig c = config;
        c.n_samples = m;
        const KDistribution dist = estimate_k_distribution(bench, c, n_realizations, base_seed);
        curve.push_back({m, dist.expectation(), dist.standard_deviation(), dist.beat_probability(), dist.failures()});
    }
    return curve;
}

ErrorProfile error_profile(const BenchmarkCase& bench, const SolverConfig& config, std::size_t n_realizations,
                           std::uint64_t base_seed)
{
    check_realizations(n_realizations);
    const Trajectory reference = serial_fine_solution(bench.system, bench.mesh);
    const std::size_t points = reference.states.size();
    const std::size_t d = bench.system.dimension();

    ErrorProfile profile;
    profile.times = reference.times;
    profile.n_realizations = n_realizations;

    SolverConfig deterministic = config;
    deterministic.worker_count = 1;
    const RunResult parareal = run_parareal(bench.system, bench.mesh, deterministic);
    profile.parareal_error.reserve(points);
    for (std::size_t j = 0; j < points; ++j) {
        profile.parareal_error.push_back(abs_components(parareal.fine_solution.states[j] - reference.states[j]));
    }

    // Welford accumulators, fed in seed order: identical realisations give an
    // exactly zero spread.
    std::vector<StateVector> error_mean(points, StateVector(d));
    std::vector<StateVector> value_mean(points, StateVector(d));
    std::vector<StateVector> value_m2(points, StateVector(d));
    std::size_t used = 0;
    const std::size_t chunk = std::max<std::size_t>(8, 2 * config.worker_count);
    for_each_realization(bench, config, n_realizations, base_seed, chunk, [&](const Outcome& o) {
        if (o.blown_up || !o.result->converged) {
            ++profile.failures;
            return;
        }
        ++used;
        const double inv = 1.0 / static_cast<double>(used);
        const std::vector<StateVector>& states = o.result->fine_solution.states;
        for (std::size_t j = 0; j < points; ++j) {
            for (std::size_t i = 0; i < d; ++i) {
                const double x = states[j][i];
                const double err = std::abs(x - reference.states[j][i]);
                error_mean[j][i] += (err - error_mean[j][i]) * inv;
                const double delta = x - value_mean[j][i];
                value_mean[j][i] += delta * inv;
                value_m2[j][i] += delta * (x - value_mean[j][i]);
            }
        }
    });

    profile.mean_abs_error = std::move(error_mean);
    profile.two_sd.assign(points, StateVector(d));
    if (used > 1) {
        for (std::size_t j = 0; j < points; ++j) {
            for (std::size_t i = 0; i < d; ++i) {
                profile.two_sd[j][i] = 2.0 * std::sqrt(std::max(0.0, value_m2[j][i]) / static_cast<double>(used - 1));
            }
        }
    }
    return profile;
}

std::vector<SweepRow> coarse_step_sweep(const CaseFactory& factory, std::span<const std::size_t> coarse_steps,
                                        const SolverConfig& config, std::span<const std::size_t> sample_counts,
                                        std::size_t n_realizations, std::uint64_t base_seed)
{
    std::vector<SweepRow> rows;
    for (const std::size_t steps : coarse_steps) {
        BenchmarkCase bench = factory(steps);
        SolverConfig deterministic = config;
        deterministic.tolerance = bench.tolerance;
        deterministic.worker_count = 1;
        const RunResult reference = run_parareal(bench.system, bench.mesh, deterministic);
        bench.expected_kd = reference.iterations;
        for (const std::size_t m : sample_counts) {
            SolverConfig c = config;
            c.tolerance = bench.tolerance;
            c.n_samples = m;
            const KDistribution dist = estimate_k_distribution(bench, c, n_realizations, base_seed);
            rows.push_back({steps, reference.iterations, m, dist.beat_probability(), dist.failures()});
        }
    }
    return rows;
}

} // namespace pint
