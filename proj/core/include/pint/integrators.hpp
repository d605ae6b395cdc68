#pragma once

#include "pint/ode_system.hpp"
#include "pint/state.hpp"
#include "pint/time_mesh.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace pint {

/// One classical fourth-order Runge-Kutta step of size h from (u, t).
/// Throws BlowUpError if any stage or the result is non-finite.
[[nodiscard]] StateVector rk4_step(const OdeSystem& system, const StateVector& u, double t, double h);

enum class PropagatorRole { Coarse, Fine };

/// Fixed-step RK4 propagator. Holds a non-owning reference to the system;
/// stateless across calls, so one instance may be used from many threads.
class Propagator {
public:
    Propagator(const OdeSystem& system, double step_size, PropagatorRole role);

    /// Coarse (dT) or fine (dt) propagator for `mesh`.
    static Propagator coarse(const OdeSystem& system, const TimeMesh& mesh);
    static Propagator fine(const OdeSystem& system, const TimeMesh& mesh);

    [[nodiscard]] const OdeSystem& system() const noexcept { return *system_; }
    [[nodiscard]] double step_size() const noexcept { return step_; }
    [[nodiscard]] PropagatorRole role() const noexcept { return role_; }

    /// Number of steps covering [t_start, t_end]; throws if the span is not
    /// an integer multiple of the step (relative tolerance 1e-9).
    [[nodiscard]] std::size_t steps_between(double t_start, double t_end) const;

private:
    const OdeSystem* system_;
    double step_;
    PropagatorRole role_;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
};

/// Integrates from u0 at t_start to t_end; returns the final state only.
[[nodiscard]] StateVector propagate(const Propagator& prop, const StateVector& u0, double t_start, double t_end);

/// As propagate, but returns std::nullopt instead of throwing on blow-up.
[[nodiscard]] std::optional<StateVector> try_propagate(const Propagator& prop, const StateVector& u0,
                                                       double t_start, double t_end);

/// As propagate, recording every step; trajectory.states.front() == u0.
[[nodiscard]] Trajectory propagate_trajectory(const Propagator& prop, const StateVector& u0, double t_start,
                                              double t_end);

/// Serial fine solution over the whole mesh, one state per fine step.
/// This is the reference every parareal solution is measured against.
[[nodiscard]] Trajectory serial_fine_solution(const OdeSystem& system, const TimeMesh& mesh);

/// Serial fine composition evaluated at the sub-interval boundaries T_0..T_N.
[[nodiscard]] std::vector<StateVector> serial_fine_boundaries(const OdeSystem& system, const TimeMesh& mesh);

} // namespace pint
