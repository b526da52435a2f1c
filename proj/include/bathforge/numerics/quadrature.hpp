// quadrature.hpp: globally adaptive Gauss-Kronrod (10/21) integration

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bathforge::numerics {

using Integrand = std::function<double(double)>;

struct QuadratureOptions {
    double rel_tol{1e-10};
    double abs_tol{0.0};
    std::size_t max_intervals{400000};
};

struct QuadratureResult {
    double value{0.0};
    double error{0.0};          // estimated absolute error
    std::size_t intervals{0};   // number of panels in the final partition
    bool converged{true};
    double worst_lo{0.0};       // panel carrying the largest error on exit
    double worst_hi{0.0};
};

// Integrates f over [a, b]. The panel partition starts from `panels` equal
// subintervals and is refined where the Kronrod error estimate is largest.
QuadratureResult integrate(const Integrand& f, double a, double b,
                           const QuadratureOptions& opts = {},
                           std::size_t panels = 1);

// Integrates f over consecutive intervals [p0, p1], [p1, p2], ... of a sorted
// breakpoint list. Breakpoints must be finite and nondecreasing.
QuadratureResult integrate(const Integrand& f, std::span<const double> breakpoints,
                           const QuadratureOptions& opts = {});

// Integrates f over [a, inf) through the map x = a + scale * (1 - u) / u.
// `scale` should be of the order of the decay length of f beyond a.
QuadratureResult integrate_to_infinity(const Integrand& f, double a, double scale,
                                       const QuadratureOptions& opts = {});

// Integrates f over (-inf, b].
QuadratureResult integrate_from_minus_infinity(const Integrand& f, double b, double scale,
                                               const QuadratureOptions& opts = {});

// Combines two partial results (sum of values and errors).
QuadratureResult combine(const QuadratureResult& lhs, const QuadratureResult& rhs);

// Throws NumericError carrying the interval and residual when `r` did not converge.
void require_converged(const QuadratureResult& r, const std::string& context);

// Breakpoint list a, a + h, ..., b with at most `max_panels` panels.
std::vector<double> uniform_breakpoints(double a, double b, double h, std::size_t max_panels);

// Merges extra breakpoints that fall strictly inside [front, back] and sorts.
std::vector<double> merge_breakpoints(std::vector<double> base, std::span<const double> extra);

} // namespace bathforge::numerics
