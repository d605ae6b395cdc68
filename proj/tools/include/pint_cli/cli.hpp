#pragma once

#include <pint/experiments.hpp>
#include <pint/parareal.hpp>
#include <pint/solver_config.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pint::cli {

enum class Subcommand { Solve, Mc, Curve, Sweep, Errors };
enum class SolverKind { Parareal, Stochastic };
enum class OutputFormat { Csv, Json };

struct CliConfig {
    Subcommand subcommand = Subcommand::Solve;
    std::string problem = "scalar";
    SolverKind solver = SolverKind::Parareal;
    std::size_t samples = 1;
    SamplingRule rule = SamplingRule::Rule1;
    bool correlations = true;
    std::optional<double> tolerance;
    std::optional<std::size_t> max_iterations;
    std::uint64_t seed = 0;
    std::size_t realizations = 200;
    std::size_t workers = 1;
    /// M values for `curve` and `sweep`.
    std::vector<std::size_t> sample_list{1, 2, 3, 5, 10, 25, 50};
    /// Total coarse step counts for `sweep`.
    std::vector<std::size_t> coarse_steps{20, 40, 60};
    std::optional<std::string> output;
    /// Defaults to JSON for `solve`, CSV otherwise.
    std::optional<OutputFormat> format;
    /// Notes produced while parsing (ignored options).
    std::vector<std::string> warnings;
};

/// Bad command line. `exit_code` is 0 for --help, nonzero otherwise.
class UsageError : public std::runtime_error {
public:
    UsageError(const std::string& what, int exit_code = 2) : std::runtime_error(what), exit_code_(exit_code) {}
    [[nodiscard]] int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

/// Parses argv[1..]. PINT_SEED supplies the seed when --seed is absent.
/// Throws UsageError.
[[nodiscard]] CliConfig parse_args(int argc, const char* const* argv);

[[nodiscard]] OutputFormat effective_format(const CliConfig& config) noexcept;

/// Double with 17 significant digits.
[[nodiscard]] std::string format_number(double value);

[[nodiscard]] std::string solve_json(const RunResult& result, const std::string& problem);
[[nodiscard]] std::string solve_csv(const RunResult& result, const TimeMesh& mesh);
[[nodiscard]] std::string kdist_csv(const KDistribution& dist);
[[nodiscard]] std::string kdist_json(const KDistribution& dist);
[[nodiscard]] std::string curve_csv(const std::vector<CurvePoint>& curve);
[[nodiscard]] std::string curve_json(const std::vector<CurvePoint>& curve);
[[nodiscard]] std::string sweep_csv(const std::vector<SweepRow>& rows);
[[nodiscard]] std::string sweep_json(const std::vector<SweepRow>& rows);
[[nodiscard]] std::string errors_csv(const ErrorProfile& profile);
[[nodiscard]] std::string errors_json(const ErrorProfile& profile);

/// Runs a parsed command. Writes the document to config.output or `out`,
/// diagnostics to `err`. Returns 0 iff the run converged (solve) or every
/// realisation completed; 3 when the output cannot be written.
int execute(const CliConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + execute; usage errors go to `err` with exit status 2.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace pint::cli
