#pragma once

#include "pint/ode_system.hpp"
#include "pint/state.hpp"
#include "pint/time_mesh.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pint {

/// A benchmark system together with its reference discretisation.
struct BenchmarkCase {
    std::string name;
    OdeSystem system;
    TimeMesh mesh;
    double tolerance;
    /// Iterations deterministic parareal needs on this configuration.
    std::size_t expected_kd;
    std::optional<std::function<StateVector(double)>> analytic_solution;
};

/// du/dt = sin(u)cos(u) - 2u + exp(-t/100) sin(5t) + ln(1+t) cos(t), u(0) = 1 on [0, 100].
/// N = 40, dT = 100/80, dt = 100/8000, eps = 1e-10.
[[nodiscard]] BenchmarkCase scalar_nonlinear();

/// du/dt = 2u/(1+t) - t^2 u^2, u(0) = 2 on [0, 10]. N = 20, dt = 10/2000, eps = 1e-10.
/// `coarse_steps` is the total number of coarse steps on [0, 10] (20, 40 or 60
/// in the coarse-step sweep); expected_kd is known for those three.
[[nodiscard]] BenchmarkCase bernoulli(std::size_t coarse_steps = 20);

/// Closed-form solution of the Bernoulli problem.
[[nodiscard]] double bernoulli_exact(double t) noexcept;

/// Brusselator with (A, B) = (1, 3), u(0) = (1, 3.07) on [0, 15.3].
/// N = 25, dT = 15.3/25, dt = 15.3/2500, eps = 1e-6.
[[nodiscard]] BenchmarkCase brusselator();

/// Square limit cycle, u(0) = (1.5, 1.5) on [0, 60]. N = 30, dT = 2, dt = 60/3000, eps = 1e-8.
[[nodiscard]] BenchmarkCase square_limit_cycle();

/// Lorenz with (10, 28, 8/3), u(0) = (-15, -15, 20) on [0, 18].
/// N = 50, dT = 18/250, dt = 18/18750, eps = 1e-8.
[[nodiscard]] BenchmarkCase lorenz();

/// Names accepted by make_case: scalar, bernoulli, brusselator, square, lorenz.
[[nodiscard]] const std::vector<std::string>& case_names();

/// Looks up a case by its CLI name; std::nullopt when unknown.
[[nodiscard]] std::optional<BenchmarkCase> make_case(std::string_view name);

} // namespace pint
