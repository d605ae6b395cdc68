#include <pint/errors.hpp>
#include <pint/integrators.hpp>
#include <pint/problems.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace pint;

namespace {

OdeSystem linear(double lambda, double tN = 1.0)
{
    return {"linear", [lambda](const StateVector& u, double) { return lambda * u; }, StateVector{1.0}, 0.0, tN};
}

} // namespace

TEST(Rk4, ConstantFieldIsFixed)
{
    const OdeSystem zero{"zero", [](const StateVector& u, double) { return StateVector(u.size()); },
                         StateVector{3.25, -1.0}, 0.0, 1.0};
    EXPECT_EQ(rk4_step(zero, StateVector{3.25, -1.0}, 0.0, 0.37), (StateVector{3.25, -1.0}));
}

TEST(Rk4, ExponentialStepIsTruncatedTaylorSeries)
{
    // For f(u) = u one RK4 step is 1 + h + h^2/2 + h^3/6 + h^4/24.
    const StateVector next = rk4_step(linear(1.0), StateVector{1.0}, 0.0, 0.1);
    EXPECT_NEAR(next[0], 1.1051708333333333, 1e-15);
}

TEST(Rk4, DecayWithinTaylorRemainder)
{
    const double h = 0.5;
    const StateVector next = rk4_step(linear(-1.0), StateVector{1.0}, 0.0, h);
    const double p4 = 1.0 - h + h * h / 2.0 - h * h * h / 6.0 + h * h * h * h / 24.0;
    const double exact = std::exp(-h);
    EXPECT_LE(std::abs(next[0] - exact), std::abs(exact - p4) * (1.0 + 1e-12));
}

TEST(Rk4, FourthOrderConvergence)
{
    const OdeSystem sys{"osc", [](const StateVector& u, double t) { return StateVector{u[0] * std::cos(t)}; },
                        StateVector{1.0}, 0.0, 2.0};
    const double exact = std::exp(std::sin(2.0));
    const auto error = [&](double h) {
        const Propagator prop(sys, h, PropagatorRole::Fine);
        return std::abs(propagate(prop, sys.initial_value(), 0.0, 2.0)[0] - exact);
    };
    const double ratio = error(0.1) / error(0.05);
    EXPECT_GE(ratio, 14.0);
    EXPECT_LE(ratio, 18.0);
}

TEST(Rk4, BlowUpRaises)
{
    const OdeSystem sys{"quadratic", [](const StateVector& u, double) { return StateVector{u[0] * u[0]}; },
                        StateVector{1.0}, 0.0, 2.0};
    const Propagator prop(sys, 0.01, PropagatorRole::Fine);
    EXPECT_THROW((void)propagate(prop, StateVector{1e200}, 0.0, 1.0), BlowUpError);
    EXPECT_FALSE(try_propagate(prop, StateVector{1e200}, 0.0, 1.0).has_value());
    EXPECT_TRUE(try_propagate(prop, StateVector{0.1}, 0.0, 1.0).has_value());
}

TEST(Propagator, ZeroSpanLeavesValueUnchanged)
{
    const OdeSystem sys = linear(1.0);
    const Propagator prop(sys, 0.1, PropagatorRole::Coarse);
    EXPECT_EQ(propagate(prop, StateVector{2.5}, 0.3, 0.3), StateVector{2.5});
}

TEST(Propagator, CoarseIsCompositionOfSteps)
{
    const BenchmarkCase bench = scalar_nonlinear();
    const Propagator coarse = Propagator::coarse(bench.system, bench.mesh);
    const double t0 = bench.mesh.boundary(3);
    StateVector u = bench.system.initial_value();
    const StateVector via_propagate = propagate(coarse, u, t0, bench.mesh.boundary(4));
    const double h = bench.mesh.coarse_step();
    for (std::size_t i = 0; i < bench.mesh.coarse_steps_per_subinterval(); ++i) {
        u = rk4_step(bench.system, u, t0 + static_cast<double>(i) * h, h);
    }
    EXPECT_EQ(via_propagate, u);
}

TEST(Propagator, RejectsNonIntegerSpan)
{
    const OdeSystem sys = linear(1.0);
    const Propagator prop(sys, 0.3, PropagatorRole::Fine);
    EXPECT_THROW((void)propagate(prop, StateVector{1.0}, 0.0, 1.0), std::invalid_argument);
}

TEST(Trajectory, FinalStateMatchesPropagate)
{
    const BenchmarkCase bench = lorenz();
    const Propagator fine = Propagator::fine(bench.system, bench.mesh);
    const double a = bench.mesh.boundary(2);
    const double b = bench.mesh.boundary(3);
    const Trajectory traj = propagate_trajectory(fine, bench.system.initial_value(), a, b);
    EXPECT_EQ(traj.states.size(), bench.mesh.fine_steps_per_subinterval() + 1);
    EXPECT_EQ(traj.states.front(), bench.system.initial_value());
    EXPECT_EQ(traj.states.back(), propagate(fine, bench.system.initial_value(), a, b));
    EXPECT_EQ(traj.times.front(), a);
    EXPECT_EQ(traj.times.back(), b);
}

TEST(SerialFine, ScalarReferenceIsFinite)
{
    const BenchmarkCase bench = scalar_nonlinear();
    const Trajectory traj = serial_fine_solution(bench.system, bench.mesh);
    ASSERT_EQ(traj.states.size(), bench.mesh.total_fine_steps() + 1);
    for (const StateVector& u : traj.states) EXPECT_TRUE(u.is_finite());
}

TEST(SerialFine, BoundariesMatchTrajectory)
{
    const BenchmarkCase bench = brusselator();
    const Trajectory traj = serial_fine_solution(bench.system, bench.mesh);
    const std::vector<StateVector> boundaries = serial_fine_boundaries(bench.system, bench.mesh);
    ASSERT_EQ(boundaries.size(), bench.mesh.n_subintervals() + 1);
    for (std::size_t n = 0; n < boundaries.size(); ++n) {
        EXPECT_EQ(boundaries[n], traj.states[n * bench.mesh.fine_steps_per_subinterval()]);
    }
}

TEST(SerialFine, BernoulliMatchesClosedForm)
{
    const BenchmarkCase bench = bernoulli();
    const Propagator fine = Propagator::fine(bench.system, bench.mesh);
    const StateVector end = propagate(fine, bench.system.initial_value(), 0.0, 10.0);
    EXPECT_NEAR(end[0], bernoulli_exact(10.0), 1e-6);
}
