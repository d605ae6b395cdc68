#include "pint/time_mesh.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pint {

namespace {

std::size_t integer_ratio(double numerator, double denominator, const char* what)
{
    const double ratio = numerator / denominator;
    const double rounded = std::round(ratio);
    if (!(rounded >= 1.0) || std::abs(ratio - rounded) > 1e-9 * rounded) {
        throw std::invalid_argument(std::string("TimeMesh: ") + what + " is not an integer multiple");
    }
    return static_cast<std::size_t>(rounded);
}

} // namespace

TimeMesh::TimeMesh(double t0, double tN, std::size_t n_subintervals, std::size_t coarse_steps_per_subinterval,
                   std::size_t fine_steps_per_subinterval)
    : t0_(t0), tN_(tN), n_(n_subintervals), coarse_per_sub_(coarse_steps_per_subinterval),
      fine_per_sub_(fine_steps_per_subinterval)
{
    if (!std::isfinite(t0) || !std::isfinite(tN) || !(tN > t0)) {
        throw std::invalid_argument("TimeMesh: require finite t0 < tN");
    }
    if (n_ == 0 || coarse_per_sub_ == 0 || fine_per_sub_ == 0) {
        throw std::invalid_argument("TimeMesh: step counts must be >= 1");
    }
    if (fine_per_sub_ < 2 * coarse_per_sub_) {
        throw std::invalid_argument("TimeMesh: fine step must be at most half the coarse step");
    }
}

TimeMesh TimeMesh::from_step_sizes(double t0, double tN, std::size_t n_subintervals, double coarse_step,
                                   double fine_step)
{
    if (n_subintervals == 0) {
        throw std::invalid_argument("TimeMesh: N must be >= 1");
    }
    if (!(coarse_step > 0.0) || !(fine_step > 0.0)) {
        throw std::invalid_argument("TimeMesh: step sizes must be positive");
    }
    const double sub = (tN - t0) / static_cast<double>(n_subintervals);
    const std::size_t coarse = integer_ratio(sub, coarse_step, "sub-interval length / coarse step");
    const std::size_t fine_per_coarse = integer_ratio(coarse_step, fine_step, "coarse step / fine step");
    return TimeMesh(t0, tN, n_subintervals, coarse, coarse * fine_per_coarse);
}

double TimeMesh::boundary(std::size_t n) const noexcept
{
    if (n >= n_) {
        return tN_;
    }
    return t0_ + (tN_ - t0_) * static_cast<double>(n) / static_cast<double>(n_);
}

double TimeMesh::fine_time(std::size_t j) const noexcept
{
    const std::size_t total = total_fine_steps();
    if (j >= total) {
        return tN_;
    }
    return t0_ + (tN_ - t0_) * static_cast<double>(j) / static_cast<double>(total);
}

TimeMesh make_mesh(const OdeSystem& system, std::size_t n_subintervals, std::size_t coarse_steps_per_subinterval,
                   std::size_t fine_steps_per_coarse)
{
    if (fine_steps_per_coarse == 0) {
        throw std::invalid_argument("make_mesh: fine steps per coarse step must be >= 1");
    }
    return TimeMesh(system.t0(), system.tN(), n_subintervals, coarse_steps_per_subinterval,
                    coarse_steps_per_subinterval * fine_steps_per_coarse);
}

} // namespace pint
