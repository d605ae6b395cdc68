#include <pint/sampling.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace pint;

namespace {

SamplingMoments moments(StateVector mean, StateVector sd, Matrix r)
{
    return {std::move(mean), std::move(sd), std::move(r)};
}

struct Summary {
    double mean = 0.0;
    double sd = 0.0;
};

Summary summarise(const std::vector<StateVector>& draws, std::size_t component)
{
    double mean = 0.0;
    for (const StateVector& x : draws) mean += x[component];
    mean /= static_cast<double>(draws.size());
    double var = 0.0;
    for (const StateVector& x : draws) var += (x[component] - mean) * (x[component] - mean);
    return {mean, std::sqrt(var / static_cast<double>(draws.size() - 1))};
}

constexpr std::size_t kDraws = 100001;

} // namespace

TEST(RngStream, MatchesReferenceVectors)
{
    std::ifstream file(std::string(PINT_TEST_DATA_DIR) + "/splitmix64_vectors.txt");
    ASSERT_TRUE(file) << "missing reference vectors";
    std::string line;
    int checked = 0;
    while (std::getline(file, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream in(line);
        std::uint64_t seed = 0;
        in >> seed;
        RngStream rng(seed);
        std::string hex;
        while (in >> hex) {
            EXPECT_EQ(rng.next_u64(), std::stoull(hex, nullptr, 16)) << "seed " << seed;
            ++checked;
        }
    }
    EXPECT_EQ(checked, 5 * 16);
}

TEST(RngStream, UniformIsOpenInterval)
{
    RngStream rng(99);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(RngStream, SameSeedSameStream)
{
    RngStream a(5);
    RngStream b(5);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.normal(), b.normal());
}

TEST(Pearson, PerfectlyDependentComponents)
{
    const std::vector<StateVector> batch{{1.0, 2.0}, {2.0, 4.0}, {3.0, 6.0}};
    const Matrix r = pearson_correlation(batch);
    EXPECT_DOUBLE_EQ(r(0, 1), 1.0);
    EXPECT_DOUBLE_EQ(r(1, 0), 1.0);
    EXPECT_DOUBLE_EQ(r(0, 0), 1.0);
}

TEST(Pearson, UncorrelatedCorners)
{
    const std::vector<StateVector> batch{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {0.0, 0.0}};
    const Matrix r = pearson_correlation(batch);
    EXPECT_EQ(r(0, 1), 0.0);
    EXPECT_EQ(r(1, 0), 0.0);
}

TEST(Pearson, AntiCorrelated)
{
    const std::vector<StateVector> batch{{1.0, -1.0}, {2.0, -2.0}, {4.0, -4.0}};
    EXPECT_DOUBLE_EQ(pearson_correlation(batch)(0, 1), -1.0);
}

TEST(Pearson, ConstantComponentGivesZero)
{
    const std::vector<StateVector> batch{{1.0, 5.0, 2.0}, {2.0, 5.0, 1.0}, {3.0, 5.0, 7.0}};
    const Matrix r = pearson_correlation(batch);
    EXPECT_EQ(r(0, 1), 0.0);
    EXPECT_EQ(r(1, 2), 0.0);
    EXPECT_EQ(r(1, 1), 1.0);
    EXPECT_TRUE(is_correlation_matrix(r));
}

TEST(Pearson, NeedsTwoVectors)
{
    const std::vector<StateVector> batch{{1.0, 2.0}};
    EXPECT_THROW((void)pearson_correlation(batch), std::invalid_argument);
}

TEST(CorrelationFactor, RepairsIndefiniteMatrix)
{
    Matrix r(3, 3);
    r << 1.0, 0.9, -0.9, 0.9, 1.0, 0.9, -0.9, 0.9, 1.0;
    EXPECT_FALSE(Eigen::LLT<Matrix>(r).info() == Eigen::Success);
    const Matrix repaired = repair_correlation(r);
    EXPECT_TRUE(is_correlation_matrix(repaired, 1e-12));
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Matrix>(repaired).eigenvalues().minCoeff(), -1e-12);
    const Matrix lower = correlation_factor(r);
    EXPECT_TRUE(lower.allFinite());
    EXPECT_LT((lower * lower.transpose() - repaired).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(CorrelationFactor, SingularMatrixFactorises)
{
    Matrix r(2, 2);
    r << 1.0, 1.0, 1.0, 1.0;
    const Matrix lower = correlation_factor(r);
    EXPECT_LT((lower * lower.transpose() - r).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(CorrelationFactor, NonFiniteMatrixThrows)
{
    Matrix r(2, 2);
    r << 1.0, std::nan(""), std::nan(""), 1.0;
    EXPECT_THROW((void)correlation_factor(r), FactorizationError);
}

TEST(Moments, IdentityAtSecondIteration)
{
    const std::vector<StateVector> props{{1.0, 2.0}, {2.0, 4.1}, {3.0, 6.0}};
    MomentInputs in;
    in.iteration = 2;
    in.previous_fine = StateVector{1.0, 1.0};
    in.predictor_corrector = StateVector{2.0, 2.0};
    in.coarse = StateVector{0.5, 0.5};
    in.previous_coarse = StateVector{0.25, 1.0};
    in.previous_propagations = props;
    const SamplingMoments m = moments_for_rule(SamplingRule::Rule1, true, in);
    EXPECT_TRUE(m.correlation.isIdentity());
    in.iteration = 3;
    const SamplingMoments later = moments_for_rule(SamplingRule::Rule1, true, in);
    EXPECT_GT(later.correlation(0, 1), 0.99);
    const SamplingMoments uncorrelated = moments_for_rule(SamplingRule::Rule1, false, in);
    EXPECT_TRUE(uncorrelated.correlation.isIdentity());
}

TEST(Moments, RulesDifferOnlyInMean)
{
    const std::vector<StateVector> props{{1.0, 2.0}, {2.0, 3.0}, {3.0, 7.0}};
    MomentInputs in;
    in.iteration = 4;
    in.previous_fine = StateVector{1.0, 1.0};
    in.predictor_corrector = StateVector{2.0, 2.0};
    in.coarse = StateVector{0.5, 0.5};
    in.previous_coarse = StateVector{0.25, 1.0};
    in.previous_propagations = props;
    const SamplingMoments r1 = moments_for_rule(SamplingRule::Rule1, true, in);
    const SamplingMoments r2 = moments_for_rule(SamplingRule::Rule2, true, in);
    const SamplingMoments r3 = moments_for_rule(SamplingRule::Rule3, true, in);
    const SamplingMoments r4 = moments_for_rule(SamplingRule::Rule4, true, in);
    EXPECT_EQ(r1.mean, in.previous_fine);
    EXPECT_EQ(r3.mean, in.previous_fine);
    EXPECT_EQ(r2.mean, in.predictor_corrector);
    EXPECT_EQ(r4.mean, in.predictor_corrector);
    EXPECT_EQ(r1.std_dev, (StateVector{0.25, 0.5}));
    EXPECT_EQ(r1.std_dev, r2.std_dev);
    EXPECT_EQ(r1.correlation, r2.correlation);
    EXPECT_EQ(r3.correlation, r4.correlation);
}

TEST(Moments, ConvergedStateHasZeroSpread)
{
    MomentInputs in;
    in.iteration = 5;
    in.previous_fine = StateVector{1.0};
    in.predictor_corrector = StateVector{1.0};
    in.coarse = StateVector{0.3};
    in.previous_coarse = StateVector{0.3};
    EXPECT_EQ(moments_for_rule(SamplingRule::Rule2, true, in).std_dev, StateVector{0.0});
}

TEST(Gaussian, ZeroSpreadReturnsMean)
{
    RngStream rng(1);
    const auto draws = sample_gaussian(moments({1.5, -2.0}, {0.0, 0.0}, Matrix::Identity(2, 2)), 10, rng);
    ASSERT_EQ(draws.size(), 9U);
    for (const StateVector& x : draws) EXPECT_EQ(x, (StateVector{1.5, -2.0}));
}

TEST(Gaussian, MixedZeroSpreadComponentIsExact)
{
    RngStream rng(2);
    const auto draws = sample_gaussian(moments({1.0, 3.0}, {0.5, 0.0}, Matrix::Identity(2, 2)), 100, rng);
    for (const StateVector& x : draws) EXPECT_EQ(x[1], 3.0);
}

TEST(Gaussian, StandardMarginal)
{
    RngStream rng(11);
    const auto draws = sample_gaussian(moments({0.0}, {1.0}, Matrix::Identity(1, 1)), kDraws, rng);
    const Summary s = summarise(draws, 0);
    EXPECT_NEAR(s.mean, 0.0, 0.02);
    EXPECT_NEAR(s.sd, 1.0, 0.02);
}

TEST(Gaussian, CorrelationIsReproduced)
{
    Matrix r(2, 2);
    r << 1.0, 0.8, 0.8, 1.0;
    RngStream rng(12);
    const auto draws = sample_gaussian(moments({1.0, -1.0}, {2.0, 0.5}, r), kDraws, rng);
    const double rho = pearson_correlation(draws)(0, 1);
    EXPECT_GE(rho, 0.78);
    EXPECT_LE(rho, 0.82);
}

TEST(Gaussian, RequiresTwoSamples)
{
    RngStream rng(1);
    EXPECT_THROW((void)sample_gaussian(moments({0.0}, {1.0}, Matrix::Identity(1, 1)), 1, rng), std::invalid_argument);
}

TEST(Copula, CauchyCdfAnchors)
{
    EXPECT_DOUBLE_EQ(cauchy_cdf(0.0), 0.5);
    EXPECT_DOUBLE_EQ(cauchy_cdf(1.0), 0.75);
    EXPECT_DOUBLE_EQ(cauchy_cdf(-1.0), 0.25);
}

TEST(Copula, OutputsStayInsideUniformSupport)
{
    Matrix r(3, 3);
    r << 1.0, 0.6, -0.3, 0.6, 1.0, 0.1, -0.3, 0.1, 1.0;
    const StateVector mu{1.0, -5.0, 1e-3};
    const StateVector sd{0.2, 3.0, 1e-9};
    RngStream rng(13);
    const auto draws = sample_tcopula(moments(mu, sd, r), 20000, rng);
    for (const StateVector& x : draws) {
        for (std::size_t i = 0; i < 3; ++i) {
            ASSERT_GE(x[i], mu[i] - std::numbers::sqrt3 * sd[i]);
            ASSERT_LE(x[i], mu[i] + std::numbers::sqrt3 * sd[i]);
        }
    }
}

TEST(Copula, MarginalMomentsMatch)
{
    Matrix r(2, 2);
    r << 1.0, 0.5, 0.5, 1.0;
    const StateVector mu{2.0, -3.0};
    const StateVector sd{0.5, 1.5};
    RngStream rng(14);
    const auto draws = sample_tcopula(moments(mu, sd, r), kDraws, rng);
    for (std::size_t i = 0; i < 2; ++i) {
        const Summary s = summarise(draws, i);
        EXPECT_NEAR(s.mean, mu[i], 0.02 * std::abs(mu[i]));
        EXPECT_NEAR(s.sd, sd[i], 0.02 * sd[i]);
    }
}

TEST(Copula, ScalarMarginalIsUniform)
{
    RngStream rng(15);
    const double mu = 0.0;
    const double sd = 1.0;
    const auto draws = sample_tcopula(moments({mu}, {sd}, Matrix::Identity(1, 1)), kDraws, rng);
    std::vector<double> x;
    x.reserve(draws.size());
    for (const StateVector& v : draws) x.push_back(v[0]);
    std::sort(x.begin(), x.end());
    const double lo = mu - std::numbers::sqrt3 * sd;
    const double width = 2.0 * std::numbers::sqrt3 * sd;
    double ks = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double cdf = (x[i] - lo) / width;
        ks = std::max({ks, std::abs(cdf - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - cdf)});
    }
    EXPECT_LT(ks, 0.01);
}

TEST(SampleForRule, DispatchesByFamily)
{
    const SamplingMoments m = moments({0.0}, {1.0}, Matrix::Identity(1, 1));
    RngStream a(3);
    RngStream b(3);
    EXPECT_EQ(sample_for_rule(SamplingRule::Rule1, m, 5, a), sample_gaussian(m, 5, b));
    RngStream c(3);
    RngStream d(3);
    EXPECT_EQ(sample_for_rule(SamplingRule::Rule4, m, 5, c), sample_tcopula(m, 5, d));
}
