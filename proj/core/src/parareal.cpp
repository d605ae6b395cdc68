#include "pint/parareal.hpp"

#include <algorithm>
#include <stdexcept>

namespace pint {

double RunResult::speedup_bound() const noexcept
{
    if (iterations == 0 || boundary_values.size() < 2) {
        return 0.0;
    }
    return static_cast<double>(boundary_values.size() - 1) / static_cast<double>(iterations);
}

namespace detail {

StateVector correct(const StateVector& fine, const StateVector& coarse_new, const StateVector& coarse_old)
{
    StateVector out = fine;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += coarse_new[i] - coarse_old[i];
    }
    return out;
}

double update_converged_prefix(PintState& state, double tolerance, bool relative_error)
{
    const std::size_t n_total = state.current.size() - 1;
    const std::size_t old_prefix = state.converged_prefix;
    std::vector<double> errors(n_total + 1, 0.0);
    double max_error = 0.0;
    for (std::size_t n = old_prefix + 1; n <= n_total; ++n) {
        double e = norm_inf(state.current[n] - state.previous[n]);
        if (relative_error) {
            e /= std::max(1.0, norm_inf(state.current[n]));
        }
        errors[n] = e;
        max_error = std::max(max_error, e);
    }
    // I = max n such that the error is below tolerance at every i in (I, n).
    // n = I + 1 qualifies vacuously: U_{I+1} was propagated by F from a
    // converged value, so at least one sub-interval converges per iteration.
    std::size_t prefix = old_prefix + 1;
    while (prefix < n_total && errors[prefix] < tolerance) {
        ++prefix;
    }
    state.converged_prefix = prefix;
    return max_error;
}

Trajectory assemble_fine_solution(const OdeSystem& system, const TimeMesh& mesh,
                                  const std::vector<StateVector>& boundaries, const Executor& executor)
{
    const std::size_t n_sub = mesh.n_subintervals();
    const Propagator fine = Propagator::fine(system, mesh);
    std::vector<Trajectory> pieces(n_sub);
    executor.parallel_for(n_sub, [&](std::size_t n) {
        pieces[n] = propagate_trajectory(fine, boundaries[n], mesh.boundary(n), mesh.boundary(n + 1));
    });

    const std::size_t per_sub = mesh.fine_steps_per_subinterval();
    Trajectory out;
    out.times.reserve(mesh.total_fine_steps() + 1);
    out.states.reserve(mesh.total_fine_steps() + 1);
    for (std::size_t n = 0; n < n_sub; ++n) {
        for (std::size_t j = 0; j < per_sub; ++j) {
            out.times.push_back(mesh.fine_time(n * per_sub + j));
            out.states.push_back(pieces[n].states[j]);
        }
    }
    out.times.push_back(mesh.tN());
    out.states.push_back(pieces.back().states.back());
    return out;
}

} // namespace detail

PintState zeroth_iteration(const OdeSystem& system, const TimeMesh& mesh)
{
    const std::size_t n_sub = mesh.n_subintervals();
    const Propagator coarse = Propagator::coarse(system, mesh);
    PintState state;
    state.coarse.reserve(n_sub + 1);
    state.coarse.push_back(system.initial_value());
    for (std::size_t n = 1; n <= n_sub; ++n) {
        state.coarse.push_back(propagate(coarse, state.coarse[n - 1], mesh.boundary(n - 1), mesh.boundary(n)));
    }
    state.current = state.coarse;
    state.previous = state.coarse;
    state.coarse_previous = state.coarse;
    state.fine.assign(n_sub + 1, system.initial_value());
    return state;
}

IterationReport parareal_iteration(PintState& state, const OdeSystem& system, const TimeMesh& mesh,
                                   double tolerance, const Executor& executor, bool relative_error)
{
    const std::size_t n_sub = mesh.n_subintervals();
    const std::size_t first = state.converged_prefix;
    if (first >= n_sub) {
        throw std::logic_error("parareal_iteration: already converged");
    }
    const Propagator fine = Propagator::fine(system, mesh);
    const Propagator coarse = Propagator::coarse(system, mesh);

    // Fine propagation of U^{k-1}_{n-1}, n = I+1..N, one task per sub-interval.
    const std::size_t count = n_sub - first;
    executor.parallel_for(count, [&](std::size_t i) {
        const std::size_t n = first + 1 + i;
        state.fine[n] = propagate(fine, state.current[n - 1], mesh.boundary(n - 1), mesh.boundary(n));
    });

    state.previous = state.current;
    state.coarse_previous = state.coarse;
    for (std::size_t n = first + 1; n <= n_sub; ++n) {
        state.coarse[n] = propagate(coarse, state.current[n - 1], mesh.boundary(n - 1), mesh.boundary(n));
        state.current[n] = detail::correct(state.fine[n], state.coarse[n], state.coarse_previous[n]);
    }
    ++state.iteration;

    IterationReport report;
    report.fine_calls = count;
    report.coarse_calls = count;
    report.processors = count;
    report.error = detail::update_converged_prefix(state, tolerance, relative_error);
    return report;
}

RunResult run_parareal(const OdeSystem& system, const TimeMesh& mesh, const SolverConfig& config,
                       const IterationObserver& observer)
{
    config.validate();
    const std::size_t n_sub = mesh.n_subintervals();
    const std::size_t max_iterations = config.max_iterations.value_or(n_sub);
    const Executor executor(config.worker_count);

    RunResult result;
    result.solver = "parareal";
    PintState state = zeroth_iteration(system, mesh);
    result.coarse_solver_calls = n_sub;

    while (state.converged_prefix < n_sub && state.iteration < max_iterations) {
        const IterationReport report =
            parareal_iteration(state, system, mesh, config.tolerance, executor, config.relative_error);
        result.per_iteration_error.push_back(report.error);
        result.converged_prefix_history.push_back(state.converged_prefix);
        result.processors_per_iteration.push_back(report.processors);
        result.fine_solver_calls += report.fine_calls;
        result.coarse_solver_calls += report.coarse_calls;
        result.max_processors_used = std::max(result.max_processors_used, report.processors);
        if (observer) observer(state);
    }

    result.iterations = state.iteration;
    result.converged = state.converged_prefix == n_sub;
    result.fine_solution = detail::assemble_fine_solution(system, mesh, state.current, executor);
    result.boundary_values = std::move(state.current);
    return result;
}

} // namespace pint
