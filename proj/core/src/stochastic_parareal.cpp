#include "pint/stochastic_parareal.hpp"

#include "pint/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pint {

ProcessorLedger::ProcessorLedger(std::size_t block_size, std::size_t first, std::size_t last)
    : block_size_(block_size)
{
    if (block_size == 0) {
        throw std::invalid_argument("ProcessorLedger: block size must be >= 1");
    }
    for (std::size_t n = first; n <= last && first <= last; ++n) {
        samples_[n] = block_size;
    }
    peak_ = usage();
}

std::size_t ProcessorLedger::samples_at(std::size_t n) const noexcept
{
    const auto it = samples_.find(n);
    return it == samples_.end() ? 0 : it->second;
}

std::size_t ProcessorLedger::total_samples() const noexcept
{
    return std::accumulate(samples_.begin(), samples_.end(), std::size_t{0},
                           [](std::size_t acc, const auto& entry) { return acc + entry.second; });
}

void ProcessorLedger::record_usage() noexcept
{
    peak_ = std::max(peak_, usage());
}

std::size_t ProcessorLedger::retire_through(std::size_t prefix)
{
    std::size_t freed = 0;
    for (auto it = samples_.begin(); it != samples_.end() && it->first <= prefix;) {
        freed += it->second / block_size_;
        it = samples_.erase(it);
    }
    return freed;
}

void ProcessorLedger::add_block(std::size_t n)
{
    samples_[n] += block_size_;
}

ProcessorLedger reassign_idle(ProcessorLedger ledger, std::size_t freed_blocks)
{
    if (ledger.allocation().empty()) {
        return ledger;
    }
    for (std::size_t b = 0; b < freed_blocks; ++b) {
        // std::map iterates in increasing n, and min_element keeps the first minimum.
        const auto target = std::min_element(ledger.allocation().begin(), ledger.allocation().end(),
                                             [](const auto& a, const auto& b) { return a.second < b.second; });
        ledger.add_block(target->first);
    }
    return ledger;
}

Selection select_optimal(std::span<SampleBatch> batches, const StateVector& anchor_fine)
{
    Selection out;
    out.indices.reserve(batches.size());
    out.values.reserve(batches.size());
    out.fine_values.reserve(batches.size());

    StateVector target = anchor_fine;
    for (SampleBatch& batch : batches) {
        std::optional<std::size_t> best;
        double best_distance = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < batch.samples.size(); ++j) {
            if (!batch.fine_propagations[j]) continue;
            const double distance = norm_l2(batch.samples[j] - target);
            if (!best || distance < best_distance) {
                best = j;
                best_distance = distance;
            }
        }
        if (!best) {
            throw BlowUpError("every sampled propagation blew up at sub-interval " +
                              std::to_string(batch.subinterval_index));
        }
        batch.selected_index = best;
        out.indices.push_back(*best);
        out.values.push_back(batch.samples[*best]);
        out.fine_values.push_back(*batch.fine_propagations[*best]);
        target = out.fine_values.back();
    }
    return out;
}

std::size_t stochastic_predictor_corrector(PintState& state, const StateVector& anchor_fine,
                                           std::span<const StateVector> selected_fine,
                                           std::span<const StateVector> selected_coarse, const OdeSystem& system,
                                           const TimeMesh& mesh)
{
    const std::size_t n_sub = mesh.n_subintervals();
    const std::size_t first = state.converged_prefix;
    if (first >= n_sub) {
        throw std::logic_error("stochastic_predictor_corrector: already converged");
    }
    const std::size_t expected = n_sub - first - 1;
    if (selected_fine.size() != expected || selected_coarse.size() != expected) {
        throw std::invalid_argument("stochastic_predictor_corrector: selection size mismatch");
    }
    const Propagator coarse = Propagator::coarse(system, mesh);

    state.previous = state.current;
    state.coarse_previous = state.coarse;
    for (std::size_t n = first + 1; n <= n_sub; ++n) {
        state.coarse[n] = propagate(coarse, state.current[n - 1], mesh.boundary(n - 1), mesh.boundary(n));
        if (n == first + 1) {
            state.fine[n] = anchor_fine;
            state.current[n] = detail::correct(anchor_fine, state.coarse[n], state.coarse_previous[n]);
        } else {
            const std::size_t s = n - first - 2;
            state.fine[n] = selected_fine[s];
            state.current[n] = detail::correct(selected_fine[s], state.coarse[n], selected_coarse[s]);
        }
    }
    ++state.iteration;
    return n_sub - first;
}

namespace {

struct StochasticIteration {
    IterationReport report;
    /// Finite propagations per sampled boundary, for next iteration's correlations.
    std::map<std::size_t, std::vector<StateVector>> propagations;
};

StochasticIteration stochastic_iteration(PintState& state, const OdeSystem& system, const TimeMesh& mesh,
                                         const SolverConfig& config, const ProcessorLedger& ledger,
                                         const std::map<std::size_t, std::vector<StateVector>>& previous_props,
                                         RngStream& rng, const Executor& executor)
{
    const std::size_t n_sub = mesh.n_subintervals();
    const std::size_t first = state.converged_prefix;
    const std::size_t k = state.iteration + 1;
    const bool use_ledger = config.n_samples >= 2 && config.reassign_idle_processors;

    // Draw every sample on the coordinator, in (n, m) order, before any propagation.
    std::vector<SampleBatch> batches;
    batches.reserve(n_sub - first - 1);
    for (std::size_t n = first + 1; n + 1 <= n_sub; ++n) {
        SampleBatch batch;
        batch.subinterval_index = n;
        batch.samples.push_back(state.current[n]);
        const std::size_t m_n = use_ledger ? ledger.samples_at(n) : config.n_samples;
        if (m_n >= 2) {
            MomentInputs in;
            in.iteration = k;
            in.previous_fine = state.fine[n];
            in.predictor_corrector = state.current[n];
            in.coarse = state.coarse[n];
            in.previous_coarse = state.coarse_previous[n];
            if (const auto it = previous_props.find(n - 1); it != previous_props.end()) {
                in.previous_propagations = it->second;
            }
            const SamplingMoments moments = moments_for_rule(config.sampling_rule, config.use_correlations, in);
            std::vector<StateVector> drawn = sample_for_rule(config.sampling_rule, moments, m_n, rng);
            batch.samples.insert(batch.samples.end(), drawn.begin(), drawn.end());
        }
        batch.fine_propagations.resize(batch.samples.size());
        batches.push_back(std::move(batch));
    }

    // Flatten: task 0 is F(U_I), then every (batch, sample) pair.
    std::vector<std::pair<std::size_t, std::size_t>> tasks;
    for (std::size_t b = 0; b < batches.size(); ++b) {
        for (std::size_t j = 0; j < batches[b].samples.size(); ++j) tasks.emplace_back(b, j);
    }
    const Propagator fine = Propagator::fine(system, mesh);
    StateVector anchor;
    executor.parallel_for(tasks.size() + 1, [&](std::size_t t) {
        if (t == 0) {
            anchor = propagate(fine, state.current[first], mesh.boundary(first), mesh.boundary(first + 1));
            return;
        }
        const auto [b, j] = tasks[t - 1];
        const std::size_t n = batches[b].subinterval_index;
        batches[b].fine_propagations[j] =
            try_propagate(fine, batches[b].samples[j], mesh.boundary(n), mesh.boundary(n + 1));
    });

    const Selection selection = select_optimal(batches, anchor);

    // G(alpha-hat_n); when the pinned sample wins, the last sweep already computed it.
    const Propagator coarse = Propagator::coarse(system, mesh);
    std::vector<StateVector> selected_coarse(batches.size());
    std::vector<std::size_t> fresh;
    for (std::size_t b = 0; b < batches.size(); ++b) {
        if (selection.indices[b] == 0) {
            selected_coarse[b] = state.coarse[batches[b].subinterval_index + 1];
        } else {
            fresh.push_back(b);
        }
    }
    executor.parallel_for(fresh.size(), [&](std::size_t i) {
        const std::size_t b = fresh[i];
        const std::size_t n = batches[b].subinterval_index;
        selected_coarse[b] = propagate(coarse, selection.values[b], mesh.boundary(n), mesh.boundary(n + 1));
    });

    const std::size_t sweep_calls =
        stochastic_predictor_corrector(state, anchor, selection.fine_values, selected_coarse, system, mesh);

    StochasticIteration out;
    out.report.fine_calls = tasks.size() + 1;
    out.report.coarse_calls = fresh.size() + sweep_calls;
    out.report.processors = tasks.size() + 1;
    out.report.error = detail::update_converged_prefix(state, config.tolerance, config.relative_error);
    for (const SampleBatch& batch : batches) {
        std::vector<StateVector>& finite = out.propagations[batch.subinterval_index];
        for (const auto& p : batch.fine_propagations) {
            if (p) finite.push_back(*p);
        }
    }
    return out;
}

void record(RunResult& result, const PintState& state, const IterationReport& report)
{
    result.per_iteration_error.push_back(report.error);
    result.converged_prefix_history.push_back(state.converged_prefix);
    result.processors_per_iteration.push_back(report.processors);
    result.fine_solver_calls += report.fine_calls;
    result.coarse_solver_calls += report.coarse_calls;
    result.max_processors_used = std::max(result.max_processors_used, report.processors);
}

} // namespace

RunResult run_stochastic_parareal(const OdeSystem& system, const TimeMesh& mesh, const SolverConfig& config,
                                  const IterationObserver& observer)
{
    config.validate();
    const std::size_t n_sub = mesh.n_subintervals();
    const std::size_t max_iterations = config.max_iterations.value_or(n_sub);
    const Executor executor(config.worker_count);
    RngStream rng(config.rng_seed);

    RunResult result;
    result.solver = "stochastic";
    PintState state = zeroth_iteration(system, mesh);
    result.coarse_solver_calls = n_sub;

    if (max_iterations >= 1) {
        const IterationReport first =
            parareal_iteration(state, system, mesh, config.tolerance, executor, config.relative_error);
        record(result, state, first);
        if (observer) observer(state);
    }

    ProcessorLedger ledger(config.n_samples, state.converged_prefix + 1, n_sub - 1);
    std::map<std::size_t, std::vector<StateVector>> previous_props;
    while (state.converged_prefix < n_sub && state.iteration < max_iterations) {
        StochasticIteration it =
            stochastic_iteration(state, system, mesh, config, ledger, previous_props, rng, executor);
        record(result, state, it.report);
        ledger.record_usage();
        const std::size_t freed = ledger.retire_through(state.converged_prefix);
        if (config.n_samples >= 2 && config.reassign_idle_processors) {
            ledger = reassign_idle(std::move(ledger), freed);
        }
        previous_props = std::move(it.propagations);
        if (observer) observer(state);
    }

    result.iterations = state.iteration;
    result.converged = state.converged_prefix == n_sub;
    result.fine_solution = detail::assemble_fine_solution(system, mesh, state.current, executor);
    result.boundary_values = std::move(state.current);
    return result;
}

} // namespace pint
