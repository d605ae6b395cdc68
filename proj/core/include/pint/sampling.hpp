#pragma once

#include "pint/solver_config.hpp"
#include "pint/state.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pint {

using Matrix = Eigen::MatrixXd;

/// SplitMix64 stream with Box-Muller normals.
///
/// Bit-reproducible on every platform with IEEE doubles: the raw stream is
/// pure 64-bit integer arithmetic and the normal transform uses only
/// log/sqrt/cos/sin of the same inputs. Reference vectors live in
/// tests/data/splitmix64_vectors.txt.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) noexcept : state_(seed), seed_(seed) {}

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() noexcept
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on the open interval (0, 1): midpoints of a 2^-52 grid.
    double uniform() noexcept { return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52; }

    /// Standard normal. Variates are produced in pairs; the second is cached.
    double normal() noexcept;

private:
    std::uint64_t state_;
    std::uint64_t seed_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// The factorisation of a correlation matrix failed even after repair.
class FactorizationError : public std::runtime_error {
public:
    FactorizationError(const std::string& what, Matrix offending)
        : std::runtime_error(what), matrix_(std::move(offending))
    {
    }

    [[nodiscard]] const Matrix& matrix() const noexcept { return matrix_; }

private:
    Matrix matrix_;
};

/// Parameters of the sampling distribution at one boundary.
struct SamplingMoments {
    StateVector mean;
    StateVector std_dev;
    Matrix correlation;
};

/// Pearson correlation matrix of a batch of d-vectors (M >= 2).
/// Unit diagonal; pairs involving a constant component get 0; entries are
/// clamped to [-1, 1].
[[nodiscard]] Matrix pearson_correlation(std::span<const StateVector> batch);

/// Symmetric, unit diagonal, entries in [-1, 1] (to `tolerance`).
[[nodiscard]] bool is_correlation_matrix(const Matrix& r, double tolerance = 1e-12);

/// Nearest-PSD repair: clip negative eigenvalues, rescale to unit diagonal.
[[nodiscard]] Matrix repair_correlation(const Matrix& r);

/// Lower-triangular L with L L^T = R. Tries R, then its repair, then the
/// repair plus 1e-12 * d on the diagonal; throws FactorizationError otherwise.
[[nodiscard]] Matrix correlation_factor(const Matrix& r);

/// Values known at boundary n when building iteration k's distribution.
struct MomentInputs {
    std::size_t iteration = 2;
    /// F(U^{k-2}_{n-1}): the fine value arriving at T_n last iteration.
    StateVector previous_fine;
    /// U^{k-1}_n.
    StateVector predictor_corrector;
    /// G(U^{k-1}_{n-1}).
    StateVector coarse;
    /// G(U^{k-2}_{n-1}).
    StateVector previous_coarse;
    /// F-propagations of last iteration's samples at n - 1, arriving at T_n.
    /// Empty when unavailable; then R = I.
    std::span<const StateVector> previous_propagations;
};

/// Mean per rule, sigma = |G(U^{k-1}_{n-1}) - G(U^{k-2}_{n-1})| for every rule,
/// R = I at k = 2, without correlations, or for d = 1; otherwise Pearson of
/// previous_propagations.
[[nodiscard]] SamplingMoments moments_for_rule(SamplingRule rule, bool use_correlations, const MomentInputs& in);

/// M - 1 draws from N(mu, Sigma), Sigma_ij = R_ij sigma_i sigma_j; the
/// missing first sample is the pinned predictor-corrector value.
/// Components with sigma_i = 0 equal mu_i exactly.
[[nodiscard]] std::vector<StateVector> sample_gaussian(const SamplingMoments& moments, std::size_t n_samples,
                                                       RngStream& rng);

/// M - 1 draws from the nu = 1 t-copula with correlation R, each marginal
/// mapped to the uniform distribution on [mu_i - sqrt(3) sigma_i, mu_i + sqrt(3) sigma_i].
[[nodiscard]] std::vector<StateVector> sample_tcopula(const SamplingMoments& moments, std::size_t n_samples,
                                                      RngStream& rng);

/// Gaussian for Rule1/Rule2, t-copula for Rule3/Rule4.
[[nodiscard]] std::vector<StateVector> sample_for_rule(SamplingRule rule, const SamplingMoments& moments,
                                                       std::size_t n_samples, RngStream& rng);

/// CDF of the t distribution with one degree of freedom (standard Cauchy).
[[nodiscard]] double cauchy_cdf(double t) noexcept;

} // namespace pint
