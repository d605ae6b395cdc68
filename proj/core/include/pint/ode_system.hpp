#pragma once

#include "pint/state.hpp"

#include <cstddef>
#include <functional>
#include <string>

namespace pint {

/// Right-hand side f(u, t) of du/dt = f(u, t).
using RhsFunction = std::function<StateVector(const StateVector&, double)>;

/// An initial value problem du/dt = f(u, t), u(t0) = u0, on [t0, tN].
///
/// Immutable after construction. The constructor evaluates f once at
/// (u0, t0) to check that the right-hand side preserves the dimension.
class OdeSystem {
public:
    OdeSystem(std::string name, RhsFunction rhs, StateVector initial_value, double t0, double tN);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t dimension() const noexcept { return initial_value_.size(); }
    [[nodiscard]] const StateVector& initial_value() const noexcept { return initial_value_; }
    [[nodiscard]] double t0() const noexcept { return t0_; }
    [[nodiscard]] double tN() const noexcept { return tN_; }

    [[nodiscard]] StateVector rhs(const StateVector& u, double t) const { return rhs_(u, t); }

private:
    std::string name_;
    RhsFunction rhs_;
    StateVector initial_value_;
    double t0_;
    double tN_;
};

} // namespace pint
