#pragma once

#include "pint/executor.hpp"
#include "pint/integrators.hpp"
#include "pint/ode_system.hpp"
#include "pint/solver_config.hpp"
#include "pint/state.hpp"
#include "pint/time_mesh.hpp"

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace pint {

/// Iterate of the parareal scheme. All arrays have N + 1 entries indexed by
/// boundary n; entry 0 is always u0. Entries n <= converged_prefix are frozen.
struct PintState {
    std::size_t iteration = 0;
    /// Predictor-corrector values U^k_n.
    std::vector<StateVector> current;
    /// U^{k-1}_n.
    std::vector<StateVector> previous;
    /// Coarse sweep values G(U^k_{n-1}).
    std::vector<StateVector> coarse;
    /// Coarse sweep values of the iteration before, G(U^{k-1}_{n-1}).
    std::vector<StateVector> coarse_previous;
    /// Fine values used in the latest correction, F(U^{k-1}_{n-1}).
    std::vector<StateVector> fine;
    /// I: every n <= I has converged.
    std::size_t converged_prefix = 0;
};

/// Bookkeeping for one iteration.
struct IterationReport {
    /// max over n in (old I, N] of ||U^k_n - U^{k-1}_n||_inf.
    double error = 0.0;
    std::size_t fine_calls = 0;
    std::size_t coarse_calls = 0;
    /// Processors busy with fine propagations during the iteration.
    std::size_t processors = 0;
};

struct RunResult {
    std::string solver;
    /// k_d (deterministic) or k_s (stochastic).
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<StateVector> boundary_values;
    Trajectory fine_solution;
    std::vector<double> per_iteration_error;
    /// I after each iteration.
    std::vector<std::size_t> converged_prefix_history;
    std::vector<std::size_t> processors_per_iteration;
    std::size_t fine_solver_calls = 0;
    std::size_t coarse_solver_calls = 0;
    std::size_t max_processors_used = 0;

    /// N / k: the speedup bound when G is free. Reported, never asserted.
    [[nodiscard]] double speedup_bound() const noexcept;
};

/// Called after every completed iteration with the updated state.
using IterationObserver = std::function<void(const PintState&)>;

/// Serial coarse sweep: U^0_n = G(U^0_{n-1}), I = 0.
[[nodiscard]] PintState zeroth_iteration(const OdeSystem& system, const TimeMesh& mesh);

/// One predictor-corrector iteration over the unconverged sub-intervals.
/// Fine propagations run on `executor`; the correction sweep is sequential.
IterationReport parareal_iteration(PintState& state, const OdeSystem& system, const TimeMesh& mesh,
                                   double tolerance, const Executor& executor, bool relative_error = false);

/// Deterministic parareal until I = N or max_iterations.
[[nodiscard]] RunResult run_parareal(const OdeSystem& system, const TimeMesh& mesh, const SolverConfig& config,
                                     const IterationObserver& observer = {});

// Building blocks shared with the stochastic solver.
namespace detail {

/// fine + (coarse_new - coarse_old); the coarse difference is formed first
/// so that identical coarse values leave `fine` bit-for-bit unchanged.
[[nodiscard]] StateVector correct(const StateVector& fine, const StateVector& coarse_new,
                                  const StateVector& coarse_old);

/// Advances state.converged_prefix from the current/previous iterates.
/// Returns the max error over the previously unconverged indices.
double update_converged_prefix(PintState& state, double tolerance, bool relative_error);

/// Fine trajectory over the whole mesh started from each boundary value.
[[nodiscard]] Trajectory assemble_fine_solution(const OdeSystem& system, const TimeMesh& mesh,
                                                const std::vector<StateVector>& boundaries,
                                                const Executor& executor);

} // namespace detail

} // namespace pint
