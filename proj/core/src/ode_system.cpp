#include "pint/ode_system.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pint {

OdeSystem::OdeSystem(std::string name, RhsFunction rhs, StateVector initial_value, double t0, double tN)
    : name_(std::move(name)), rhs_(std::move(rhs)), initial_value_(initial_value), t0_(t0), tN_(tN)
{
    if (!rhs_) {
        throw std::invalid_argument("OdeSystem: empty right-hand side");
    }
    if (initial_value_.empty()) {
        throw std::invalid_argument("OdeSystem: dimension must be >= 1");
    }
    if (!initial_value_.is_finite()) {
        throw std::invalid_argument("OdeSystem: non-finite initial value");
    }
    if (!std::isfinite(t0_) || !std::isfinite(tN_) || !(tN_ > t0_)) {
        throw std::invalid_argument("OdeSystem: require finite t0 < tN");
    }
    if (rhs_(initial_value_, t0_).size() != initial_value_.size()) {
        throw std::invalid_argument("OdeSystem: right-hand side changes the dimension");
    }
}

} // namespace pint
