#pragma once

#include "pint/problems.hpp"
#include "pint/solver_config.hpp"
#include "pint/state.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

namespace pint {

/// Empirical distribution of the iteration count over independent realisations.
struct KDistribution {
    std::map<std::size_t, std::size_t> counts;
    std::size_t n_realizations = 0;
    /// Realisations that hit a non-finite state.
    std::size_t blown_up = 0;
    /// Realisations that stopped at max_iterations without converging.
    std::size_t unconverged = 0;
    std::size_t kd_reference = 0;

    [[nodiscard]] std::size_t failures() const noexcept { return blown_up + unconverged; }
    /// counts[k] / n_realizations.
    [[nodiscard]] double probability(std::size_t k) const noexcept;
    /// P(k_s < k).
    [[nodiscard]] double probability_below(std::size_t k) const noexcept;
    /// P(k_s < kd_reference).
    [[nodiscard]] double beat_probability() const noexcept { return probability_below(kd_reference); }
    /// sum k P(k_s = k).
    [[nodiscard]] double expectation() const noexcept;
    /// sqrt(sum (k - E)^2 P(k_s = k)).
    [[nodiscard]] double standard_deviation() const noexcept;
};

struct CurvePoint {
    std::size_t n_samples = 0;
    double expectation = 0.0;
    double standard_deviation = 0.0;
    double beat_probability = 0.0;
    std::size_t failures = 0;
};

/// Per-fine-time error statistics of stochastic solutions against serial F.
struct ErrorProfile {
    std::vector<double> times;
    /// Mean over realisations of |U_s(t) - F(t)|, per component.
    std::vector<StateVector> mean_abs_error;
    /// Two sample standard deviations of the realisations' U_s(t), per component.
    std::vector<StateVector> two_sd;
    /// |U_p(t) - F(t)| for one deterministic parareal run.
    std::vector<StateVector> parareal_error;
    std::size_t n_realizations = 0;
    std::size_t failures = 0;

    [[nodiscard]] double max_two_sd() const noexcept;
};

struct SweepRow {
    std::size_t coarse_steps = 0;
    std::size_t kd = 0;
    std::size_t n_samples = 0;
    double beat_probability = 0.0;
    std::size_t failures = 0;
};

/// Solver configuration with the case's tolerance; everything else default.
[[nodiscard]] SolverConfig case_config(const BenchmarkCase& bench);

/// Runs the stochastic solver with seeds base_seed .. base_seed + n - 1 and
/// tallies k_s. Realisations run concurrently on config.worker_count threads;
/// the tally does not depend on the schedule.
[[nodiscard]] KDistribution estimate_k_distribution(const BenchmarkCase& bench, const SolverConfig& config,
                                                    std::size_t n_realizations, std::uint64_t base_seed);

/// E[k_s] and sd(k_s) for each M in `sample_counts` (config.n_samples is overridden).
[[nodiscard]] std::vector<CurvePoint> expectation_curve(const BenchmarkCase& bench, const SolverConfig& config,
                                                        std::span<const std::size_t> sample_counts,
                                                        std::size_t n_realizations, std::uint64_t base_seed);

/// Error of the stochastic solutions (mean, 2 sd) and of deterministic
/// parareal against the serial fine solution at every fine time.
[[nodiscard]] ErrorProfile error_profile(const BenchmarkCase& bench, const SolverConfig& config,
                                         std::size_t n_realizations, std::uint64_t base_seed);

/// Builds the case for a given total number of coarse steps.
using CaseFactory = std::function<BenchmarkCase(std::size_t coarse_steps)>;

/// For each coarse step count: recompute k_d with deterministic parareal,
/// then P(k_s < k_d) for every M. Rows are ordered by coarse steps, then M.
[[nodiscard]] std::vector<SweepRow> coarse_step_sweep(const CaseFactory& factory,
                                                      std::span<const std::size_t> coarse_steps,
                                                      const SolverConfig& config,
                                                      std::span<const std::size_t> sample_counts,
                                                      std::size_t n_realizations, std::uint64_t base_seed);

} // namespace pint
