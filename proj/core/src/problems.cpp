#include "pint/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace pint {

BenchmarkCase scalar_nonlinear()
{
    OdeSystem system(
        "scalar",
        [](const StateVector& u, double t) {
            const double x = u[0];
            return StateVector{std::sin(x) * std::cos(x) - 2.0 * x + std::exp(-t / 100.0) * std::sin(5.0 * t) +
                               std::log(1.0 + t) * std::cos(t)};
        },
        StateVector{1.0}, 0.0, 100.0);
    TimeMesh mesh = make_mesh(system, 40, 2, 100);
    return {"scalar", system, mesh, 1e-10, 25, std::nullopt};
}

double bernoulli_exact(double t) noexcept
{
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (1.0 + t) * (1.0 + t) / (t3 * t2 / 5.0 + t2 * t2 / 2.0 + t3 / 3.0 + 0.5);
}

BenchmarkCase bernoulli(std::size_t coarse_steps)
{
    constexpr std::size_t n_sub = 20;
    constexpr std::size_t fine_steps = 2000;
    if (coarse_steps == 0 || coarse_steps % n_sub != 0) {
        throw std::invalid_argument("bernoulli: coarse steps must be a positive multiple of 20");
    }
    OdeSystem system(
        "bernoulli",
        [](const StateVector& u, double t) {
            const double x = u[0];
            return StateVector{2.0 / (1.0 + t) * x - t * t * x * x};
        },
        StateVector{2.0}, 0.0, 10.0);
    TimeMesh mesh(0.0, 10.0, n_sub, coarse_steps / n_sub, fine_steps / n_sub);
    std::size_t kd = 0;
    switch (coarse_steps) {
    case 20: kd = 8; break;
    case 40: kd = 5; break;
    case 60: kd = 4; break;
    default: break;
    }
    return {"bernoulli", system, mesh, 1e-10, kd,
            std::function<StateVector(double)>([](double t) { return StateVector{bernoulli_exact(t)}; })};
}

BenchmarkCase brusselator()
{
    constexpr double a = 1.0;
    constexpr double b = 3.0;
    OdeSystem system(
        "brusselator",
        [](const StateVector& u, double) {
            const double x = u[0];
            const double y = u[1];
            const double x2y = x * x * y;
            return StateVector{a + x2y - (b + 1.0) * x, b * x - x2y};
        },
        StateVector{1.0, 3.07}, 0.0, 15.3);
    TimeMesh mesh = make_mesh(system, 25, 1, 100);
    return {"brusselator", system, mesh, 1e-6, 7, std::nullopt};
}

BenchmarkCase square_limit_cycle()
{
    OdeSystem system(
        "square",
        [](const StateVector& u, double) {
            const double x = u[0];
            const double y = u[1];
            return StateVector{-std::sin(x) * (std::cos(x) / 10.0 + std::cos(y)),
                               -std::sin(y) * (std::cos(y) / 10.0 - std::cos(x))};
        },
        StateVector{1.5, 1.5}, 0.0, 60.0);
    TimeMesh mesh = make_mesh(system, 30, 1, 100);
    return {"square", system, mesh, 1e-8, 20, std::nullopt};
}

BenchmarkCase lorenz()
{
    constexpr double sigma = 10.0;
    constexpr double rho = 28.0;
    constexpr double beta = 8.0 / 3.0;
    OdeSystem system(
        "lorenz",
        [](const StateVector& u, double) {
            return StateVector{sigma * (u[1] - u[0]), rho * u[0] - u[0] * u[2] - u[1], u[0] * u[1] - beta * u[2]};
        },
        StateVector{-15.0, -15.0, 20.0}, 0.0, 18.0);
    TimeMesh mesh = make_mesh(system, 50, 5, 75);
    return {"lorenz", system, mesh, 1e-8, 20, std::nullopt};
}

const std::vector<std::string>& case_names()
{
    static const std::vector<std::string> names{"scalar", "bernoulli", "brusselator", "square", "lorenz"};
    return names;
}

std::optional<BenchmarkCase> make_case(std::string_view name)
{
    if (name == "scalar") return scalar_nonlinear();
    if (name == "bernoulli") return bernoulli();
    if (name == "brusselator") return brusselator();
    if (name == "square") return square_limit_cycle();
    if (name == "lorenz") return lorenz();
    return std::nullopt;
}

} // namespace pint
