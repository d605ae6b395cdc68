#pragma once

#include "pint/ode_system.hpp"

#include <cstddef>

namespace pint {

/// Three-level time discretisation: N sub-intervals of length dT_sub, each
/// covered by an integer number of coarse steps dT and of fine steps dt.
///
/// Everything is derived from integer step counts, so boundary times never
/// accumulate floating-point drift.
class TimeMesh {
public:
    /// Builds a mesh on [t0, tN] from per-sub-interval step counts.
    /// Requires every count >= 1 and fine_steps_per_subinterval >= 2 * coarse_steps_per_subinterval.
    TimeMesh(double t0, double tN, std::size_t n_subintervals, std::size_t coarse_steps_per_subinterval,
             std::size_t fine_steps_per_subinterval);

    /// Builds a mesh from raw step sizes; the ratios must be integers to a
    /// relative deviation of 1e-9.
    static TimeMesh from_step_sizes(double t0, double tN, std::size_t n_subintervals, double coarse_step,
                                    double fine_step);

    [[nodiscard]] double t0() const noexcept { return t0_; }
    [[nodiscard]] double tN() const noexcept { return tN_; }
    [[nodiscard]] std::size_t n_subintervals() const noexcept { return n_; }
    [[nodiscard]] std::size_t coarse_steps_per_subinterval() const noexcept { return coarse_per_sub_; }
    [[nodiscard]] std::size_t fine_steps_per_subinterval() const noexcept { return fine_per_sub_; }
    [[nodiscard]] std::size_t total_fine_steps() const noexcept { return n_ * fine_per_sub_; }

    [[nodiscard]] double subinterval_length() const noexcept { return (tN_ - t0_) / static_cast<double>(n_); }
    [[nodiscard]] double coarse_step() const noexcept
    {
        return (tN_ - t0_) / static_cast<double>(n_ * coarse_per_sub_);
    }
    [[nodiscard]] double fine_step() const noexcept { return (tN_ - t0_) / static_cast<double>(n_ * fine_per_sub_); }

    /// Boundary time T_n, n in [0, N]; T_N is exactly tN.
    [[nodiscard]] double boundary(std::size_t n) const noexcept;

    /// Time of global fine step j, j in [0, N * fine_steps_per_subinterval].
    [[nodiscard]] double fine_time(std::size_t j) const noexcept;

private:
    double t0_;
    double tN_;
    std::size_t n_;
    std::size_t coarse_per_sub_;
    std::size_t fine_per_sub_;
};

/// Mesh on the system's interval with dT = dT_sub / coarse_steps_per_subinterval
/// and dt = dT / fine_steps_per_coarse.
[[nodiscard]] TimeMesh make_mesh(const OdeSystem& system, std::size_t n_subintervals,
                                 std::size_t coarse_steps_per_subinterval, std::size_t fine_steps_per_coarse);

} // namespace pint
