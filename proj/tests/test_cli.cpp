#include "pint_cli/cli.hpp"

#include <pint/problems.hpp>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace pint;

namespace {

struct Outcome {
    int status = 0;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "pint");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int status = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::istringstream in(line);
    for (std::string cell; std::getline(in, cell, ',');) out.push_back(cell);
    return out;
}

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST(CliParse, RejectsZeroSamples)
{
    const Outcome o = invoke({"solve", "--samples", "0"});
    EXPECT_NE(o.status, 0);
    EXPECT_NE(o.err.find("--samples"), std::string::npos);
}

TEST(CliParse, RejectsUnknownNames)
{
    EXPECT_NE(invoke({"solve", "--problem", "pendulum"}).status, 0);
    EXPECT_NE(invoke({"mc", "--rule", "7"}).status, 0);
    EXPECT_NE(invoke({"solve", "--solver", "magic"}).status, 0);
    EXPECT_NE(invoke({"mc", "--format", "xml"}).status, 0);
    EXPECT_NE(invoke({"frobnicate"}).status, 0);
    EXPECT_NE(invoke({}).status, 0);
}

TEST(CliParse, HelpExitsZero)
{
    const Outcome o = invoke({"--help"});
    EXPECT_EQ(o.status, 0);
    EXPECT_NE(o.out.find("solve"), std::string::npos);
}

TEST(CliParse, SweepNeedsBernoulli)
{
    EXPECT_NE(invoke({"sweep", "--problem", "lorenz"}).status, 0);
}

TEST(CliParse, PararealIgnoresSamplingOptionsWithWarning)
{
    const char* argv[] = {"pint", "solve", "--solver", "parareal", "--samples", "5", "--rule", "2"};
    const cli::CliConfig c = cli::parse_args(8, argv);
    EXPECT_EQ(c.samples, 1U);
    EXPECT_FALSE(c.warnings.empty());
}

TEST(CliParse, SeedFallsBackToEnvironment)
{
    const char* argv[] = {"pint", "mc"};
    ::setenv("PINT_SEED", "1234", 1);
    EXPECT_EQ(cli::parse_args(2, argv).seed, 1234U);
    const char* explicit_seed[] = {"pint", "mc", "--seed", "7"};
    EXPECT_EQ(cli::parse_args(4, explicit_seed).seed, 7U);
    ::setenv("PINT_SEED", "not-a-number", 1);
    EXPECT_THROW((void)cli::parse_args(2, argv), cli::UsageError);
    ::unsetenv("PINT_SEED");
    EXPECT_EQ(cli::parse_args(2, argv).seed, 0U);
}

TEST(CliParse, Lists)
{
    const char* argv[] = {"pint", "sweep", "--problem", "bernoulli", "--m-list", "2,4", "--coarse-steps", "20,60"};
    const cli::CliConfig c = cli::parse_args(8, argv);
    EXPECT_EQ(c.sample_list, (std::vector<std::size_t>{2, 4}));
    EXPECT_EQ(c.coarse_steps, (std::vector<std::size_t>{20, 60}));
}

TEST(CliSolve, LorenzReference)
{
    const Outcome o = invoke({"solve", "--problem", "lorenz", "--solver", "parareal"});
    ASSERT_EQ(o.status, 0) << o.err;
    const auto doc = nlohmann::json::parse(o.out);
    EXPECT_EQ(doc["iterations"], 20);
    EXPECT_EQ(doc["converged"], true);
    EXPECT_EQ(doc["solver"], "parareal");
    EXPECT_EQ(doc["per_iteration_error"].size(), 20U);
    EXPECT_EQ(doc["max_processors_used"], 50);
    EXPECT_TRUE(doc.contains("fine_solver_calls"));
    EXPECT_TRUE(doc.contains("coarse_solver_calls"));
}

TEST(CliSolve, SingleSampleJsonMatchesParareal)
{
    const Outcome p = invoke({"solve", "--problem", "square", "--solver", "parareal"});
    const Outcome s = invoke({"solve", "--problem", "square", "--solver", "stochastic", "--samples", "1"});
    ASSERT_EQ(p.status, 0);
    ASSERT_EQ(s.status, 0);
    auto pj = nlohmann::json::parse(p.out);
    auto sj = nlohmann::json::parse(s.out);
    EXPECT_EQ(pj["solver"], "parareal");
    EXPECT_EQ(sj["solver"], "stochastic");
    pj.erase("solver");
    sj.erase("solver");
    EXPECT_EQ(pj, sj);
}

TEST(CliSolve, NonConvergenceExitsNonZero)
{
    const Outcome o = invoke({"solve", "--problem", "scalar", "--max-iterations", "2"});
    EXPECT_EQ(o.status, 1);
    EXPECT_EQ(nlohmann::json::parse(o.out)["converged"], false);
}

TEST(CliSolve, CsvListsBoundaryValues)
{
    const Outcome o = invoke({"solve", "--problem", "lorenz", "--format", "csv"});
    const auto rows = lines(o.out);
    ASSERT_EQ(rows.size(), 1U + 51U * 3U);
    EXPECT_EQ(rows.front(), "n,time,component,value");
}

TEST(CliMc, MatchesLibraryEstimate)
{
    const Outcome o = invoke({"mc", "--problem", "brusselator", "--rule", "1", "--samples", "3", "--realizations",
                              "20", "--seed", "42"});
    ASSERT_EQ(o.status, 0) << o.err;
    const BenchmarkCase bench = brusselator();
    SolverConfig c = case_config(bench);
    c.n_samples = 3;
    const KDistribution d = estimate_k_distribution(bench, c, 20, 42);
    EXPECT_EQ(o.out, cli::kdist_csv(d));

    const auto rows = lines(o.out);
    ASSERT_GE(rows.size(), 2U);
    EXPECT_EQ(rows.front(), "k,count,probability");
    double total = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) total += std::stod(split(rows[i]).at(2));
    EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(CliMc, WorkersDoNotChangeOutput)
{
    const std::vector<std::string> base{"mc", "--problem", "brusselator", "--samples", "4", "--rule", "3",
                                        "--realizations", "12", "--seed", "5", "--format", "json"};
    auto one = base;
    one.insert(one.end(), {"--workers", "1"});
    auto three = base;
    three.insert(three.end(), {"--workers", "3"});
    EXPECT_EQ(invoke(one).out, invoke(three).out);
}

TEST(CliOutput, FilesAreByteIdenticalAcrossRuns)
{
    const auto dir = std::filesystem::temp_directory_path() / "pint_cli_test";
    std::filesystem::create_directories(dir);
    const auto a = dir / "a.csv";
    const auto b = dir / "b.csv";
    const std::vector<std::string> args{"curve", "--problem", "brusselator", "--m-list", "1,3", "--realizations", "6",
                                        "--seed", "9"};
    auto first = args;
    first.insert(first.end(), {"--output", a.string()});
    auto second = args;
    second.insert(second.end(), {"--output", b.string()});
    ASSERT_EQ(invoke(first).status, 0);
    ASSERT_EQ(invoke(second).status, 0);
    const std::string text = slurp(a);
    EXPECT_EQ(text, slurp(b));
    const auto rows = lines(text);
    ASSERT_EQ(rows.size(), 3U);
    EXPECT_EQ(rows[0], "M,expectation,sd");
    EXPECT_EQ(rows[1], "1,7,0");
    std::filesystem::remove_all(dir);
}

TEST(CliOutput, UnwritablePathFails)
{
    const Outcome o = invoke({"solve", "--problem", "bernoulli", "--output", "/nonexistent-dir/x/out.json"});
    EXPECT_EQ(o.status, 3);
}

TEST(CliErrors, RowCountIsFineStepsPlusOnePerComponent)
{
    const Outcome o = invoke({"errors", "--problem", "brusselator", "--samples", "3", "--realizations", "3"});
    ASSERT_EQ(o.status, 0) << o.err;
    const BenchmarkCase bench = brusselator();
    const auto rows = lines(o.out);
    EXPECT_EQ(rows.size(), 1U + (bench.mesh.total_fine_steps() + 1) * 2U);
    EXPECT_EQ(rows.front(), "time,component,mean_abs_error,two_sd,parareal_error");
    EXPECT_EQ(split(rows[1]).size(), 5U);
}

TEST(CliSweep, ReferenceCountsAndZeroBeatForOneSample)
{
    const Outcome o = invoke({"sweep", "--problem", "bernoulli", "--m-list", "1", "--realizations", "2"});
    ASSERT_EQ(o.status, 0) << o.err;
    const auto rows = lines(o.out);
    ASSERT_EQ(rows.size(), 4U);
    EXPECT_EQ(rows[1], "20,8,1,0");
    EXPECT_EQ(rows[2], "40,5,1,0");
    EXPECT_EQ(rows[3], "60,4,1,0");
}

TEST(CliFormat, SeventeenSignificantDigits)
{
    EXPECT_EQ(cli::format_number(0.1), "0.10000000000000001");
    EXPECT_EQ(cli::format_number(1.0), "1");
    EXPECT_EQ(std::stod(cli::format_number(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(CliBinary, LorenzReferenceFromExecutable)
{
    const std::string cmd = std::string(PINT_CLI_EXE) + " solve --problem lorenz --solver parareal > /dev/null 2>&1";
    EXPECT_EQ(std::system(cmd.c_str()), 0);
    const std::string bad = std::string(PINT_CLI_EXE) + " solve --samples 0 > /dev/null 2>&1";
    EXPECT_NE(std::system(bad.c_str()), 0);
}
