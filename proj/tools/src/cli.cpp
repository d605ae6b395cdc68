#include "pint_cli/cli.hpp"

#include <pint/errors.hpp>
#include <pint/problems.hpp>
#include <pint/stochastic_parareal.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

namespace pint::cli {

namespace {

using nlohmann::json;

struct RawOptions {
    std::string problem = "scalar";
    std::string solver = "parareal";
    long long samples = 1;
    std::string rule = "1";
    bool correlations = true;
    double tolerance = 0.0;
    long long max_iterations = 0;
    std::uint64_t seed = 0;
    long long realizations = 200;
    long long workers = 1;
    std::vector<long long> sample_list{1, 2, 3, 5, 10, 25, 50};
    std::vector<long long> coarse_steps{20, 40, 60};
    std::string output;
    std::string format;
};

struct Handles {
    CLI::Option* samples = nullptr;
    CLI::Option* rule = nullptr;
    CLI::Option* correlations = nullptr;
    CLI::Option* tolerance = nullptr;
    CLI::Option* max_iterations = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* solver = nullptr;
    CLI::Option* output = nullptr;
    CLI::Option* format = nullptr;
};

Handles add_common(CLI::App& sub, RawOptions& raw)
{
    Handles h;
    sub.add_option("--problem", raw.problem, "Benchmark: scalar, bernoulli, brusselator, square, lorenz");
    h.samples = sub.add_option("-M,--samples", raw.samples, "Samples per sub-interval (M >= 1)");
    h.rule = sub.add_option("--rule", raw.rule, "Sampling rule 1-4");
    h.correlations = sub.add_flag("--correlations,!--no-correlations", raw.correlations,
                                  "Correlated multivariate samples (default on)");
    h.tolerance = sub.add_option("--tolerance", raw.tolerance, "Override the case tolerance");
    h.max_iterations = sub.add_option("--max-iterations", raw.max_iterations, "Iteration cap (default N)");
    h.seed = sub.add_option("--seed", raw.seed, "Base RNG seed (falls back to PINT_SEED, then 0)");
    sub.add_option("--workers", raw.workers, "Worker threads (scheduling only)");
    h.output = sub.add_option("-o,--output", raw.output, "Output file (default stdout)");
    h.format = sub.add_option("--format", raw.format, "csv or json");
    return h;
}

std::size_t positive(long long value, const char* what)
{
    if (value < 1) {
        throw UsageError(std::string(what) + " must be >= 1");
    }
    return static_cast<std::size_t>(value);
}

std::vector<std::size_t> positive_list(const std::vector<long long>& values, const char* what)
{
    if (values.empty()) throw UsageError(std::string(what) + " must not be empty");
    std::vector<std::size_t> out;
    out.reserve(values.size());
    for (const long long v : values) out.push_back(positive(v, what));
    return out;
}

std::uint64_t seed_from_env()
{
    const char* text = std::getenv("PINT_SEED");
    if (text == nullptr || *text == '\0') return 0;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(text, &end, 10);
    if (*end != '\0' || text[0] == '-') {
        throw UsageError(std::string("PINT_SEED is not an unsigned integer: ") + text);
    }
    return value;
}

std::string to_string(SolverKind kind)
{
    return kind == SolverKind::Parareal ? "parareal" : "stochastic";
}

SolverConfig solver_config(const CliConfig& config, const BenchmarkCase& bench)
{
    SolverConfig s = case_config(bench);
    if (config.tolerance) s.tolerance = *config.tolerance;
    s.max_iterations = config.max_iterations;
    s.n_samples = config.samples;
    s.sampling_rule = config.rule;
    s.use_correlations = config.correlations;
    s.rng_seed = config.seed;
    s.worker_count = config.workers;
    return s;
}

json number_array(const std::vector<double>& values)
{
    json a = json::array();
    for (const double v : values) a.push_back(v);
    return a;
}

std::string dump(const json& document)
{
    return document.dump(2) + "\n";
}

} // namespace

CliConfig parse_args(int argc, const char* const* argv)
{
    CLI::App app{"Parallel-in-time ODE solvers and Monte Carlo experiments", "pint"};
    app.require_subcommand(1, 1);

    RawOptions raw;
    std::vector<std::pair<CLI::App*, Subcommand>> subs;
    std::vector<Handles> handles;
    const auto add = [&](const char* name, const char* help, Subcommand kind) {
        CLI::App* sub = app.add_subcommand(name, help);
        handles.push_back(add_common(*sub, raw));
        subs.emplace_back(sub, kind);
        return sub;
    };
    CLI::App* solve = add("solve", "Run one solver and print a JSON summary", Subcommand::Solve);
    handles.back().solver = solve->add_option("--solver", raw.solver, "parareal or stochastic");
    CLI::App* mc = add("mc", "Distribution of the stochastic iteration count", Subcommand::Mc);
    mc->add_option("--realizations", raw.realizations, "Independent realisations");
    CLI::App* curve = add("curve", "E[k] and sd(k) against M", Subcommand::Curve);
    curve->add_option("--realizations", raw.realizations, "Independent realisations per M");
    curve->add_option("--m-list", raw.sample_list, "Comma-separated M values")->delimiter(',');
    CLI::App* sweep = add("sweep", "Beat probability against coarse step count (bernoulli)", Subcommand::Sweep);
    sweep->add_option("--realizations", raw.realizations, "Independent realisations per (steps, M)");
    sweep->add_option("--m-list", raw.sample_list, "Comma-separated M values")->delimiter(',');
    sweep->add_option("--coarse-steps", raw.coarse_steps, "Comma-separated total coarse steps")->delimiter(',');
    CLI::App* errors = add("errors", "Error profile against the serial fine solution", Subcommand::Errors);
    errors->add_option("--realizations", raw.realizations, "Independent realisations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw UsageError(app.help(), 0);
    } catch (const CLI::ParseError& e) {
        std::string message = e.what();
        for (const auto& [sub, kind] : subs) {
            if (sub->parsed() && (sub->get_option("--help")->count() > 0)) message = sub->help();
        }
        throw UsageError(message, e.get_exit_code() == 0 ? 0 : 2);
    }

    CliConfig config;
    const Handles* h = nullptr;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        if (subs[i].first->parsed()) {
            config.subcommand = subs[i].second;
            h = &handles[i];
        }
    }

    if (!make_case(raw.problem)) {
        throw UsageError("unknown problem '" + raw.problem + "'");
    }
    config.problem = raw.problem;

    if (raw.solver == "parareal") {
        config.solver = SolverKind::Parareal;
    } else if (raw.solver == "stochastic") {
        config.solver = SolverKind::Stochastic;
    } else {
        throw UsageError("unknown solver '" + raw.solver + "'");
    }
    if (config.subcommand != Subcommand::Solve) config.solver = SolverKind::Stochastic;

    config.samples = positive(raw.samples, "--samples");
    const auto rule = parse_sampling_rule(raw.rule);
    if (!rule) throw UsageError("unknown sampling rule '" + raw.rule + "'");
    config.rule = *rule;
    config.correlations = raw.correlations;

    if (h->tolerance->count() > 0) {
        if (!(raw.tolerance >= 0.0)) throw UsageError("--tolerance must be >= 0");
        config.tolerance = raw.tolerance;
    }
    if (h->max_iterations->count() > 0) config.max_iterations = positive(raw.max_iterations, "--max-iterations");
    config.seed = h->seed->count() > 0 ? raw.seed : seed_from_env();
    config.realizations = positive(raw.realizations, "--realizations");
    config.workers = positive(raw.workers, "--workers");
    config.sample_list = positive_list(raw.sample_list, "--m-list");
    config.coarse_steps = positive_list(raw.coarse_steps, "--coarse-steps");
    if (h->output->count() > 0) {
        if (raw.output.empty()) throw UsageError("--output needs a path");
        config.output = raw.output;
    }
    if (h->format->count() > 0) {
        if (raw.format == "csv") {
            config.format = OutputFormat::Csv;
        } else if (raw.format == "json") {
            config.format = OutputFormat::Json;
        } else {
            throw UsageError("unknown format '" + raw.format + "'");
        }
    }

    if (config.subcommand == Subcommand::Sweep && config.problem != "bernoulli") {
        throw UsageError("sweep is defined for --problem bernoulli only");
    }
    if (config.subcommand == Subcommand::Solve && config.solver == SolverKind::Parareal) {
        if (h->samples->count() > 0 || h->rule->count() > 0 || h->correlations->count() > 0) {
            config.warnings.emplace_back("--samples, --rule and --[no-]correlations are ignored by --solver parareal");
        }
        config.samples = 1;
    }
    if (config.subcommand != Subcommand::Solve && h->samples->count() > 0 &&
        (config.subcommand == Subcommand::Curve || config.subcommand == Subcommand::Sweep)) {
        config.warnings.emplace_back("--samples is ignored; use --m-list");
    }
    return config;
}

OutputFormat effective_format(const CliConfig& config) noexcept
{
    if (config.format) return *config.format;
    return config.subcommand == Subcommand::Solve ? OutputFormat::Json : OutputFormat::Csv;
}

std::string format_number(double value)
{
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::string solve_json(const RunResult& result, const std::string& problem)
{
    json doc;
    doc["problem"] = problem;
    doc["solver"] = result.solver;
    doc["iterations"] = result.iterations;
    doc["converged"] = result.converged;
    doc["fine_solver_calls"] = result.fine_solver_calls;
    doc["coarse_solver_calls"] = result.coarse_solver_calls;
    doc["max_processors_used"] = result.max_processors_used;
    doc["per_iteration_error"] = number_array(result.per_iteration_error);
    doc["converged_prefix_history"] = result.converged_prefix_history;
    doc["processors_per_iteration"] = result.processors_per_iteration;
    json boundary = json::array();
    for (const StateVector& u : result.boundary_values) {
        boundary.push_back(number_array(std::vector<double>(u.begin(), u.end())));
    }
    doc["boundary_values"] = std::move(boundary);
    return dump(doc);
}

std::string solve_csv(const RunResult& result, const TimeMesh& mesh)
{
    std::ostringstream s;
    s << "n,time,component,value\n";
    for (std::size_t n = 0; n < result.boundary_values.size(); ++n) {
        const StateVector& u = result.boundary_values[n];
        for (std::size_t i = 0; i < u.size(); ++i) {
            s << n << ',' << format_number(mesh.boundary(n)) << ',' << i << ',' << format_number(u[i]) << '\n';
        }
    }
    return s.str();
}

std::string kdist_csv(const KDistribution& dist)
{
    std::ostringstream s;
    s << "k,count,probability\n";
    for (const auto& [k, count] : dist.counts) {
        s << k << ',' << count << ',' << format_number(dist.probability(k)) << '\n';
    }
    return s.str();
}

std::string kdist_json(const KDistribution& dist)
{
    json doc;
    doc["n_realizations"] = dist.n_realizations;
    doc["kd_reference"] = dist.kd_reference;
    doc["blown_up"] = dist.blown_up;
    doc["unconverged"] = dist.unconverged;
    doc["expectation"] = dist.expectation();
    doc["sd"] = dist.standard_deviation();
    doc["beat_probability"] = dist.beat_probability();
    json rows = json::array();
    for (const auto& [k, count] : dist.counts) {
        rows.push_back({{"k", k}, {"count", count}, {"probability", dist.probability(k)}});
    }
    doc["distribution"] = std::move(rows);
    return dump(doc);
}

std::string curve_csv(const std::vector<CurvePoint>& curve)
{
    std::ostringstream s;
    s << "M,expectation,sd\n";
    for (const CurvePoint& p : curve) {
        s << p.n_samples << ',' << format_number(p.expectation) << ',' << format_number(p.standard_deviation)
          << '\n';
    }
    return s.str();
}

std::string curve_json(const std::vector<CurvePoint>& curve)
{
    json rows = json::array();
    for (const CurvePoint& p : curve) {
        rows.push_back({{"M", p.n_samples},
                        {"expectation", p.expectation},
                        {"sd", p.standard_deviation},
                        {"beat_probability", p.beat_probability},
                        {"failures", p.failures}});
    }
    return dump(rows);
}

std::string sweep_csv(const std::vector<SweepRow>& rows)
{
    std::ostringstream s;
    s << "coarse_steps,kd,M,beat_probability\n";
    for (const SweepRow& r : rows) {
        s << r.coarse_steps << ',' << r.kd << ',' << r.n_samples << ',' << format_number(r.beat_probability) << '\n';
    }
    return s.str();
}

std::string sweep_json(const std::vector<SweepRow>& rows)
{
    json out = json::array();
    for (const SweepRow& r : rows) {
        out.push_back({{"coarse_steps", r.coarse_steps},
                       {"kd", r.kd},
                       {"M", r.n_samples},
                       {"beat_probability", r.beat_probability},
                       {"failures", r.failures}});
    }
    return dump(out);
}

std::string errors_csv(const ErrorProfile& profile)
{
    std::ostringstream s;
    s << "time,component,mean_abs_error,two_sd,parareal_error\n";
    for (std::size_t j = 0; j < profile.times.size(); ++j) {
        const std::string t = format_number(profile.times[j]);
        for (std::size_t i = 0; i < profile.mean_abs_error[j].size(); ++i) {
            s << t << ',' << i << ',' << format_number(profile.mean_abs_error[j][i]) << ','
              << format_number(profile.two_sd[j][i]) << ',' << format_number(profile.parareal_error[j][i]) << '\n';
        }
    }
    return s.str();
}

std::string errors_json(const ErrorProfile& profile)
{
    const auto columns = [](const std::vector<StateVector>& rows) {
        json a = json::array();
        for (const StateVector& u : rows) a.push_back(std::vector<double>(u.begin(), u.end()));
        return a;
    };
    json doc;
    doc["n_realizations"] = profile.n_realizations;
    doc["failures"] = profile.failures;
    doc["time"] = profile.times;
    doc["mean_abs_error"] = columns(profile.mean_abs_error);
    doc["two_sd"] = columns(profile.two_sd);
    doc["parareal_error"] = columns(profile.parareal_error);
    return dump(doc);
}

int execute(const CliConfig& config, std::ostream& out, std::ostream& err)
{
    for (const std::string& w : config.warnings) err << "warning: " << w << '\n';

    const BenchmarkCase bench = *make_case(config.problem);
    const SolverConfig solver = solver_config(config, bench);
    const bool as_json = effective_format(config) == OutputFormat::Json;

    std::string document;
    bool success = false;
    try {
        switch (config.subcommand) {
        case Subcommand::Solve: {
            const RunResult result = config.solver == SolverKind::Parareal
                                         ? run_parareal(bench.system, bench.mesh, solver)
                                         : run_stochastic_parareal(bench.system, bench.mesh, solver);
            document = as_json ? solve_json(result, config.problem) : solve_csv(result, bench.mesh);
            success = result.converged;
            err << to_string(config.solver) << ": " << config.problem << " k = " << result.iterations
                << (result.converged ? "" : " (not converged)") << '\n';
            break;
        }
        case Subcommand::Mc: {
            const KDistribution dist = estimate_k_distribution(bench, solver, config.realizations, config.seed);
            document = as_json ? kdist_json(dist) : kdist_csv(dist);
            success = dist.failures() == 0;
            if (!success) err << "failed realisations: " << dist.failures() << '\n';
            break;
        }
        case Subcommand::Curve: {
            const auto curve = expectation_curve(bench, solver, config.sample_list, config.realizations, config.seed);
            document = as_json ? curve_json(curve) : curve_csv(curve);
            success = true;
            for (const CurvePoint& p : curve) success = success && p.failures == 0;
            break;
        }
        case Subcommand::Sweep: {
            const CaseFactory factory = [](std::size_t steps) { return bernoulli(steps); };
            const auto rows = coarse_step_sweep(factory, config.coarse_steps, solver, config.sample_list,
                                                config.realizations, config.seed);
            document = as_json ? sweep_json(rows) : sweep_csv(rows);
            success = true;
            for (const SweepRow& r : rows) success = success && r.failures == 0;
            break;
        }
        case Subcommand::Errors: {
            const ErrorProfile profile = error_profile(bench, solver, config.realizations, config.seed);
            document = as_json ? errors_json(profile) : errors_csv(profile);
            success = profile.failures == 0;
            break;
        }
        }
    } catch (const BlowUpError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    if (config.output) {
        std::ofstream file(*config.output, std::ios::binary);
        if (!file || !(file << document) || !file.flush()) {
            err << "error: cannot write " << *config.output << '\n';
            return 3;
        }
    } else {
        out << document;
    }
    return success ? 0 : 1;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CliConfig config;
    try {
        config = parse_args(argc, argv);
    } catch (const UsageError& e) {
        (e.exit_code() == 0 ? out : err) << e.what() << (e.exit_code() == 0 ? "" : "\n");
        return e.exit_code();
    }
    return execute(config, out, err);
}

} // namespace pint::cli
