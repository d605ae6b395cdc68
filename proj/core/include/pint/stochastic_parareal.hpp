#pragma once

#include "pint/parareal.hpp"
#include "pint/sampling.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace pint {

/// Candidate initial values at one boundary T_n and their fine propagations.
struct SampleBatch {
    std::size_t subinterval_index = 0;
    /// samples[0] is the predictor-corrector value U^{k-1}_n.
    std::vector<StateVector> samples;
    /// F(samples[j]) arriving at T_{n+1}; std::nullopt where it blew up.
    std::vector<std::optional<StateVector>> fine_propagations;
    std::optional<std::size_t> selected_index;
};

/// Logical processor accounting for the stochastic iterations.
///
/// Holds the sample count M_n of every sampled, unconverged boundary. One
/// further processor always propagates the last converged value, so usage is
/// sum(M_n) + 1.
class ProcessorLedger {
public:
    ProcessorLedger() = default;

    /// `block_size` samples at every boundary in [first, last]; empty when first > last.
    ProcessorLedger(std::size_t block_size, std::size_t first, std::size_t last);

    [[nodiscard]] std::size_t block_size() const noexcept { return block_size_; }
    [[nodiscard]] const std::map<std::size_t, std::size_t>& allocation() const noexcept { return samples_; }
    [[nodiscard]] std::size_t samples_at(std::size_t n) const noexcept;
    [[nodiscard]] std::size_t total_samples() const noexcept;
    [[nodiscard]] std::size_t usage() const noexcept { return total_samples() + 1; }
    [[nodiscard]] std::size_t peak_usage() const noexcept { return peak_; }

    /// Folds the current usage into the peak.
    void record_usage() noexcept;

    /// Drops every boundary n <= prefix; returns the number of freed blocks.
    std::size_t retire_through(std::size_t prefix);

    /// Adds one block at boundary n.
    void add_block(std::size_t n);

private:
    std::size_t block_size_ = 1;
    std::map<std::size_t, std::size_t> samples_;
    std::size_t peak_ = 0;
};

/// Gives each freed block, one at a time, to the boundary with the fewest
/// samples, ties to the earliest boundary. No-op on an empty ledger.
[[nodiscard]] ProcessorLedger reassign_idle(ProcessorLedger ledger, std::size_t freed_blocks);

/// Result of the sequential selection over consecutive boundaries.
struct Selection {
    std::vector<std::size_t> indices;
    /// Selected initial values alpha-hat_n.
    std::vector<StateVector> values;
    /// F(alpha-hat_n), arriving at T_{n+1}.
    std::vector<StateVector> fine_values;
};

/// For each batch in order, picks the sample closest (Euclidean) to the fine
/// value arriving from the previous boundary, starting from `anchor_fine`.
/// Blown-up propagations are skipped; ties go to the smallest index. Throws
/// BlowUpError if every propagation in a batch blew up.
[[nodiscard]] Selection select_optimal(std::span<SampleBatch> batches, const StateVector& anchor_fine);

/// Correction sweep with selected samples. For n = I+1 uses F(U_I) (anchor);
/// for n > I+1 uses F(alpha-hat_{n-1}) - G(alpha-hat_{n-1}). `selected_fine`
/// and `selected_coarse` hold F and G of alpha-hat_n for n = I+1..N-1.
/// Returns the number of coarse propagations performed.
std::size_t stochastic_predictor_corrector(PintState& state, const StateVector& anchor_fine,
                                           std::span<const StateVector> selected_fine,
                                           std::span<const StateVector> selected_coarse, const OdeSystem& system,
                                           const TimeMesh& mesh);

/// Stochastic parareal: one deterministic iteration, then sampled iterations
/// until I = N or max_iterations. Result is a pure function of (system, mesh,
/// config) and does not depend on config.worker_count.
[[nodiscard]] RunResult run_stochastic_parareal(const OdeSystem& system, const TimeMesh& mesh,
                                                const SolverConfig& config, const IterationObserver& observer = {});

} // namespace pint
