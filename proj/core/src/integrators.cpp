#include "pint/integrators.hpp"

#include "pint/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pint {

namespace {

void check_stage(const StateVector& stage, double t)
{
    if (!stage.is_finite()) {
        throw BlowUpError("RK4 produced a non-finite state at t = " + std::to_string(t), t);
    }
}

} // namespace

StateVector rk4_step(const OdeSystem& system, const StateVector& u, double t, double h)
{
    const double half = 0.5 * h;
    const StateVector k1 = system.rhs(u, t);
    check_stage(k1, t);
    const StateVector k2 = system.rhs(u + half * k1, t + half);
    check_stage(k2, t);
    const StateVector k3 = system.rhs(u + half * k2, t + half);
    check_stage(k3, t);
    const StateVector k4 = system.rhs(u + h * k3, t + h);
    check_stage(k4, t);

    StateVector next = u;
    const double sixth = h / 6.0;
    for (std::size_t i = 0; i < next.size(); ++i) {
        next[i] += sixth * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    check_stage(next, t + h);
    return next;
}

Propagator::Propagator(const OdeSystem& system, double step_size, PropagatorRole role)
    : system_(&system), step_(step_size), role_(role)
{
    if (!(step_size > 0.0) || !std::isfinite(step_size)) {
        throw std::invalid_argument("Propagator: step size must be positive");
    }
}

Propagator Propagator::coarse(const OdeSystem& system, const TimeMesh& mesh)
{
    return {system, mesh.coarse_step(), PropagatorRole::Coarse};
}

Propagator Propagator::fine(const OdeSystem& system, const TimeMesh& mesh)
{
    return {system, mesh.fine_step(), PropagatorRole::Fine};
}

std::size_t Propagator::steps_between(double t_start, double t_end) const
{
    const double span = t_end - t_start;
    if (span < 0.0) {
        throw std::invalid_argument("Propagator: t_end precedes t_start");
    }
    const double ratio = span / step_;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, rounded)) {
        throw std::invalid_argument("Propagator: span is not an integer multiple of the step size");
    }
    return static_cast<std::size_t>(rounded);
}

StateVector propagate(const Propagator& prop, const StateVector& u0, double t_start, double t_end)
{
    const std::size_t steps = prop.steps_between(t_start, t_end);
    const double h = prop.step_size();
    StateVector u = u0;
    for (std::size_t i = 0; i < steps; ++i) {
        u = rk4_step(prop.system(), u, t_start + static_cast<double>(i) * h, h);
    }
    return u;
}

std::optional<StateVector> try_propagate(const Propagator& prop, const StateVector& u0, double t_start,
                                         double t_end)
{
    try {
        return propagate(prop, u0, t_start, t_end);
    } catch (const BlowUpError&) {
        return std::nullopt;
    }
}

Trajectory propagate_trajectory(const Propagator& prop, const StateVector& u0, double t_start, double t_end)
{
    const std::size_t steps = prop.steps_between(t_start, t_end);
    const double h = prop.step_size();
    Trajectory traj;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.times.push_back(t_start);
    traj.states.push_back(u0);
    StateVector u = u0;
    for (std::size_t i = 0; i < steps; ++i) {
        u = rk4_step(prop.system(), u, t_start + static_cast<double>(i) * h, h);
        traj.times.push_back(t_start + static_cast<double>(i + 1) * h);
        traj.states.push_back(u);
    }
    return traj;
}

Trajectory serial_fine_solution(const OdeSystem& system, const TimeMesh& mesh)
{
    const Propagator fine = Propagator::fine(system, mesh);
    const std::size_t per_sub = mesh.fine_steps_per_subinterval();
    Trajectory out;
    out.times.reserve(mesh.total_fine_steps() + 1);
    out.states.reserve(mesh.total_fine_steps() + 1);
    StateVector u = system.initial_value();
    for (std::size_t n = 0; n < mesh.n_subintervals(); ++n) {
        Trajectory piece = propagate_trajectory(fine, u, mesh.boundary(n), mesh.boundary(n + 1));
        for (std::size_t j = 0; j < per_sub; ++j) {
            out.times.push_back(mesh.fine_time(n * per_sub + j));
            out.states.push_back(piece.states[j]);
        }
        u = piece.states.back();
    }
    out.times.push_back(mesh.tN());
    out.states.push_back(u);
    return out;
}

std::vector<StateVector> serial_fine_boundaries(const OdeSystem& system, const TimeMesh& mesh)
{
    const Propagator fine = Propagator::fine(system, mesh);
    std::vector<StateVector> out;
    out.reserve(mesh.n_subintervals() + 1);
    out.push_back(system.initial_value());
    for (std::size_t n = 0; n < mesh.n_subintervals(); ++n) {
        out.push_back(propagate(fine, out.back(), mesh.boundary(n), mesh.boundary(n + 1)));
    }
    return out;
}

} // namespace pint
