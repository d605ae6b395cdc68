#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>

namespace pint {

/// Dense solution vector u(t) in R^d with inline storage.
///
/// The benchmark systems have d <= 3; storage is inline so that the RK4 inner
/// loop never touches the heap.
class StateVector {
public:
    static constexpr std::size_t kMaxDimension = 8;

    StateVector() = default;

    explicit StateVector(std::size_t dimension, double fill = 0.0) : size_(dimension)
    {
        check_dimension(dimension);
        std::fill_n(values_.begin(), size_, fill);
    }

    /// Unchecked: right-hand sides build results this way, and a non-finite
    /// component must surface as BlowUpError from the integrator.
    StateVector(std::initializer_list<double> values) : size_(values.size())
    {
        check_dimension(size_);
        std::copy(values.begin(), values.end(), values_.begin());
    }

    /// Copies `values`; rejects NaN/Inf components.
    explicit StateVector(std::span<const double> values) : size_(values.size())
    {
        check_dimension(size_);
        std::copy(values.begin(), values.end(), values_.begin());
        if (!is_finite()) {
            throw std::invalid_argument("StateVector: non-finite component");
        }
    }

    [[nodiscard]] std::size_t size() const noexcept { return size_; }
    [[nodiscard]] bool empty() const noexcept { return size_ == 0; }

    double& operator[](std::size_t i) noexcept { return values_[i]; }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    [[nodiscard]] double* begin() noexcept { return values_.data(); }
    [[nodiscard]] double* end() noexcept { return values_.data() + size_; }
    [[nodiscard]] const double* begin() const noexcept { return values_.data(); }
    [[nodiscard]] const double* end() const noexcept { return values_.data() + size_; }

    [[nodiscard]] std::span<const double> view() const noexcept { return {values_.data(), size_}; }

    [[nodiscard]] bool is_finite() const noexcept
    {
        return std::all_of(begin(), end(), [](double v) { return std::isfinite(v); });
    }

    StateVector& operator+=(const StateVector& other) noexcept
    {
        for (std::size_t i = 0; i < size_; ++i) values_[i] += other.values_[i];
        return *this;
    }

    StateVector& operator-=(const StateVector& other) noexcept
    {
        for (std::size_t i = 0; i < size_; ++i) values_[i] -= other.values_[i];
        return *this;
    }

    StateVector& operator*=(double scale) noexcept
    {
        for (std::size_t i = 0; i < size_; ++i) values_[i] *= scale;
        return *this;
    }

    friend StateVector operator+(StateVector lhs, const StateVector& rhs) noexcept { return lhs += rhs; }
    friend StateVector operator-(StateVector lhs, const StateVector& rhs) noexcept { return lhs -= rhs; }
    friend StateVector operator*(StateVector lhs, double scale) noexcept { return lhs *= scale; }
    friend StateVector operator*(double scale, StateVector rhs) noexcept { return rhs *= scale; }

    /// Exact (bitwise-value) equality; -0.0 == 0.0 as for doubles.
    friend bool operator==(const StateVector& lhs, const StateVector& rhs) noexcept
    {
        return lhs.size_ == rhs.size_ && std::equal(lhs.begin(), lhs.end(), rhs.begin());
    }

private:
    static void check_dimension(std::size_t d)
    {
        if (d > kMaxDimension) {
            throw std::invalid_argument("StateVector: dimension exceeds kMaxDimension");
        }
    }

    std::array<double, kMaxDimension> values_{};
    std::size_t size_ = 0;
};

/// Infinity norm: used by the stopping criterion.
[[nodiscard]] inline double norm_inf(const StateVector& v) noexcept
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

/// Euclidean norm: used by optimal-sample selection.
[[nodiscard]] inline double norm_l2(const StateVector& v) noexcept
{
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

/// Component-wise absolute value.
[[nodiscard]] inline StateVector abs_components(StateVector v) noexcept
{
    for (double& x : v) x = std::abs(x);
    return v;
}

} // namespace pint
