#pragma once

#include <stdexcept>
#include <string>

namespace pint {

/// A propagation produced a NaN/Inf state.
class BlowUpError : public std::runtime_error {
public:
    explicit BlowUpError(const std::string& what, double time = 0.0)
        : std::runtime_error(what), time_(time)
    {
    }

    /// Time at which the non-finite state appeared.
    [[nodiscard]] double time() const noexcept { return time_; }

private:
    double time_;
};

} // namespace pint
