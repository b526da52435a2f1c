// fit.hpp: ordinary least-squares line fits

#pragma once

#include <span>

namespace bathforge::numerics {

struct LineFit {
    double slope{0.0};
    double intercept{0.0};
    double r_squared{0.0};
    double rms_residual{0.0};
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

// Fits log(y) = s * log(x) + c. All samples must be positive.
LineFit fit_power_law(std::span<const double> x, std::span<const double> y);

} // namespace bathforge::numerics
