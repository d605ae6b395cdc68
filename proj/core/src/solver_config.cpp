#include "pint/solver_config.hpp"

#include <cmath>
#include <stdexcept>

namespace pint {

std::optional<SamplingRule> parse_sampling_rule(std::string_view text) noexcept
{
    if (text.starts_with("rule")) {
        text.remove_prefix(4);
    }
    if (text == "1") return SamplingRule::Rule1;
    if (text == "2") return SamplingRule::Rule2;
    if (text == "3") return SamplingRule::Rule3;
    if (text == "4") return SamplingRule::Rule4;
    return std::nullopt;
}

void SolverConfig::validate() const
{
    // tolerance 0 is allowed: it forces N iterations (serial fine equivalence).
    if (std::isnan(tolerance) || tolerance < 0.0) {
        throw std::invalid_argument("SolverConfig: tolerance must be >= 0");
    }
    if (max_iterations && *max_iterations == 0) {
        throw std::invalid_argument("SolverConfig: max_iterations must be >= 1");
    }
    if (n_samples == 0) {
        throw std::invalid_argument("SolverConfig: number of samples M must be >= 1");
    }
    if (worker_count == 0) {
        throw std::invalid_argument("SolverConfig: worker_count must be >= 1");
    }
}

} // namespace pint
