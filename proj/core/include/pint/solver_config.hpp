#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace pint {

/// How candidate initial values are drawn in the stochastic iterations.
///
/// Rule1/Rule3 centre on the previous fine value, Rule2/Rule4 on the
/// predictor-corrector value. Rule1/Rule2 are Gaussian, Rule3/Rule4 use a
/// t-copula (nu = 1) with uniform marginals.
enum class SamplingRule { Rule1 = 1, Rule2 = 2, Rule3 = 3, Rule4 = 4 };

[[nodiscard]] constexpr bool is_copula_rule(SamplingRule rule) noexcept
{
    return rule == SamplingRule::Rule3 || rule == SamplingRule::Rule4;
}

[[nodiscard]] constexpr bool is_fine_centred(SamplingRule rule) noexcept
{
    return rule == SamplingRule::Rule1 || rule == SamplingRule::Rule3;
}

/// Parses "1".."4" or "rule1".."rule4".
[[nodiscard]] std::optional<SamplingRule> parse_sampling_rule(std::string_view text) noexcept;

struct SolverConfig {
    double tolerance = 1e-10;
    /// Defaults to N when unset.
    std::optional<std::size_t> max_iterations;
    std::size_t n_samples = 1;
    SamplingRule sampling_rule = SamplingRule::Rule1;
    bool use_correlations = true;
    std::uint64_t rng_seed = 0;
    /// Execution hint only; results never depend on it.
    std::size_t worker_count = 1;
    /// Compare ||U^k - U^{k-1}|| / max(1, ||U^k||) instead of the absolute error.
    bool relative_error = false;
    /// Hand the samples of newly converged sub-intervals to unconverged ones.
    /// Only active when n_samples >= 2.
    bool reassign_idle_processors = true;

    /// Throws std::invalid_argument on an inconsistent configuration.
    void validate() const;
};

} // namespace pint
