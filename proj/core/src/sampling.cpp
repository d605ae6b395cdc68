#include "pint/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace pint {

double RngStream::normal() noexcept
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Matrix pearson_correlation(std::span<const StateVector> batch)
{
    if (batch.size() < 2) {
        throw std::invalid_argument("pearson_correlation: need at least two vectors");
    }
    const std::size_t d = batch.front().size();
    const double m = static_cast<double>(batch.size());

    std::vector<double> mean(d, 0.0);
    for (const StateVector& x : batch) {
        for (std::size_t i = 0; i < d; ++i) mean[i] += x[i];
    }
    for (double& v : mean) v /= m;

    Matrix cross = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (const StateVector& x : batch) {
        for (std::size_t i = 0; i < d; ++i) {
            const double di = x[i] - mean[i];
            for (std::size_t j = 0; j <= i; ++j) {
                cross(i, j) += di * (x[j] - mean[j]);
            }
        }
    }

    Matrix r = Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const double denom = std::sqrt(cross(i, i)) * std::sqrt(cross(j, j));
            double rho = 0.0;
            // Constant component: 0/0 in the raw formula, no dependence information.
            if (denom > 0.0) {
                rho = std::clamp(cross(i, j) / denom, -1.0, 1.0);
                if (!std::isfinite(rho)) rho = 0.0;
            }
            r(i, j) = rho;
            r(j, i) = rho;
        }
    }
    return r;
}

bool is_correlation_matrix(const Matrix& r, double tolerance)
{
    if (r.rows() != r.cols()) return false;
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
        if (std::abs(r(i, i) - 1.0) > tolerance) return false;
        for (Eigen::Index j = 0; j < r.cols(); ++j) {
            if (!std::isfinite(r(i, j)) || std::abs(r(i, j) - r(j, i)) > tolerance ||
                std::abs(r(i, j)) > 1.0 + tolerance) {
                return false;
            }
        }
    }
    return true;
}

Matrix repair_correlation(const Matrix& r)
{
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(r);
    const Eigen::VectorXd clipped = eig.eigenvalues().cwiseMax(0.0);
    Matrix psd = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();

    const Eigen::Index d = r.rows();
    Matrix out = Matrix::Identity(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) {
            const double scale = std::sqrt(psd(i, i) * psd(j, j));
            const double rho = scale > 0.0 ? std::clamp(psd(i, j) / scale, -1.0, 1.0) : 0.0;
            out(i, j) = rho;
            out(j, i) = rho;
        }
    }
    return out;
}

namespace {

bool try_cholesky(const Matrix& r, Matrix& lower)
{
    const Eigen::LLT<Matrix> llt(r);
    if (llt.info() != Eigen::Success) return false;
    lower = llt.matrixL();
    return lower.allFinite();
}

std::vector<StateVector> correlated_normals(const Matrix& lower, std::size_t count, RngStream& rng, bool with_chi)
{
    const std::size_t d = static_cast<std::size_t>(lower.rows());
    std::vector<StateVector> out;
    out.reserve(count);
    std::array<double, StateVector::kMaxDimension> iid{};
    for (std::size_t s = 0; s < count; ++s) {
        for (std::size_t i = 0; i < d; ++i) iid[i] = rng.normal();
        StateVector z(d);
        for (std::size_t i = 0; i < d; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j <= i; ++j) acc += lower(i, j) * iid[j];
            z[i] = acc;
        }
        if (with_chi) {
            // t = z / sqrt(w), w ~ chi^2(1) drawn as the square of a normal.
            const double g = rng.normal();
            const double root_w = std::abs(g);
            for (std::size_t i = 0; i < d; ++i) {
                const double t = z[i] / root_w;
                z[i] = std::isnan(t) ? 0.5 : cauchy_cdf(t);
            }
        }
        out.push_back(z);
    }
    return out;
}

void check_moments(const SamplingMoments& moments, std::size_t n_samples)
{
    if (n_samples < 2) {
        throw std::invalid_argument("sampler: need M >= 2");
    }
    const auto d = static_cast<Eigen::Index>(moments.mean.size());
    if (moments.std_dev.size() != moments.mean.size() || moments.correlation.rows() != d ||
        moments.correlation.cols() != d) {
        throw std::invalid_argument("sampler: inconsistent moment dimensions");
    }
}

} // namespace

Matrix correlation_factor(const Matrix& r)
{
    if (r.rows() != r.cols() || !r.allFinite()) {
        throw FactorizationError("correlation matrix is not square and finite", r);
    }
    Matrix lower;
    if (try_cholesky(r, lower)) return lower;
    Matrix repaired = repair_correlation(r);
    if (try_cholesky(repaired, lower)) return lower;
    repaired.diagonal().array() += 1e-12 * static_cast<double>(r.rows());
    if (try_cholesky(repaired, lower)) return lower;
    throw FactorizationError("correlation matrix could not be factorised after repair", r);
}

SamplingMoments moments_for_rule(SamplingRule rule, bool use_correlations, const MomentInputs& in)
{
    SamplingMoments m;
    m.mean = is_fine_centred(rule) ? in.previous_fine : in.predictor_corrector;
    m.std_dev = abs_components(in.coarse - in.previous_coarse);
    const auto d = static_cast<Eigen::Index>(m.mean.size());
    if (use_correlations && d > 1 && in.iteration >= 3 && in.previous_propagations.size() >= 2) {
        m.correlation = pearson_correlation(in.previous_propagations);
    } else {
        m.correlation = Matrix::Identity(d, d);
    }
    return m;
}

std::vector<StateVector> sample_gaussian(const SamplingMoments& moments, std::size_t n_samples, RngStream& rng)
{
    check_moments(moments, n_samples);
    const Matrix lower = correlation_factor(moments.correlation);
    std::vector<StateVector> out = correlated_normals(lower, n_samples - 1, rng, false);
    for (StateVector& z : out) {
        for (std::size_t i = 0; i < z.size(); ++i) {
            const double sigma = moments.std_dev[i];
            z[i] = sigma == 0.0 ? moments.mean[i] : moments.mean[i] + sigma * z[i];
        }
    }
    return out;
}

std::vector<StateVector> sample_tcopula(const SamplingMoments& moments, std::size_t n_samples, RngStream& rng)
{
    check_moments(moments, n_samples);
    const Matrix lower = correlation_factor(moments.correlation);
    std::vector<StateVector> out = correlated_normals(lower, n_samples - 1, rng, true);
    const double sqrt3 = std::numbers::sqrt3;
    for (StateVector& chi : out) {
        for (std::size_t i = 0; i < chi.size(); ++i) {
            const double sigma = moments.std_dev[i];
            // mu + sqrt(3) sigma (2 chi - 1) == 2 sqrt(3) sigma chi + mu - sqrt(3) sigma,
            // written so the result never leaves [mu - sqrt(3) sigma, mu + sqrt(3) sigma].
            chi[i] = sigma == 0.0 ? moments.mean[i] : moments.mean[i] + (sqrt3 * sigma) * (2.0 * chi[i] - 1.0);
        }
    }
    return out;
}

std::vector<StateVector> sample_for_rule(SamplingRule rule, const SamplingMoments& moments, std::size_t n_samples,
                                         RngStream& rng)
{
    return is_copula_rule(rule) ? sample_tcopula(moments, n_samples, rng)
                                : sample_gaussian(moments, n_samples, rng);
}

double cauchy_cdf(double t) noexcept
{
    return 0.5 + std::atan(t) / std::numbers::pi;
}

} // namespace pint
