// monotone_cubic.hpp: shape-preserving piecewise-cubic Hermite interpolation

#pragma once

#include <span>
#include <vector>

namespace bathforge::numerics {

// Fritsch-Carlson monotone cubic through (x_i, y_i). Between monotone data
// the interpolant is monotone, so nonnegative samples never produce negative
// values. Queries outside [x.front(), x.back()] throw DomainError.
class MonotoneCubic {
public:
    MonotoneCubic() = default;
    MonotoneCubic(std::vector<double> x, std::vector<double> y);

    double operator()(double x) const;
    double derivative(double x) const;

    double lo() const { return x_.front(); }
    double hi() const { return x_.back(); }
    bool contains(double x) const { return x >= x_.front() && x <= x_.back(); }

    std::span<const double> knots() const { return x_; }
    std::span<const double> values() const { return y_; }

private:
    std::size_t segment(double x) const;

    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<double> slope_;
};

} // namespace bathforge::numerics
