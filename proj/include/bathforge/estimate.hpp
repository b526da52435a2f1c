// estimate.hpp: quantum Fisher information of a dephasing qubit probe with
// respect to a bath parameter, optimal probing time and a Monte-Carlo
// maximum-likelihood harness.

#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "bathforge/filters.hpp"
#include "bathforge/kk.hpp"
#include "bathforge/spectra.hpp"

namespace bathforge::estimate {

// A one-parameter family of bath spectra and the true parameter value x.
struct BathFamily {
    std::function<spectra::BathSpectrum(double)> make;
    double x{1.0};
    std::string parameter;
};

// Lorentzian(g, tau_c) with x = g.
BathFamily lorentzian_coupling(double g, double tau_c);
// Lorentzian(g, tau_c) with x = tau_c.
BathFamily lorentzian_correlation_time(double g, double tau_c);
// Lorentzian with fixed tau_c and x = T2, the time at which the
// free-evolution exponent R t reaches 1; g is tied to T2 through
// g^2 = pi / (tau_c T2 - tau_c^2 (1 - exp(-T2 / tau_c))).
BathFamily lorentzian_t2(double t2, double tau_c);
double coupling_for_t2(double t2, double tau_c);

// A family of control protocols parameterized by total duration t.
struct ProtocolFamily {
    std::function<filters::ControlProtocol(double)> make;
    std::string label;
};

ProtocolFamily free_evolution();
ProtocolFamily cpmg(int n_pulses);

struct EstimationProblem {
    BathFamily bath;
    ProtocolFamily protocol;
    kk::QubitProbeState probe{};
    std::int64_t n_measurements{1};
};

// Decay exponent E(x, t) = R(x, t) t.
double exponent(const EstimationProblem& problem, double x, double t);

// dE/dx at the true parameter: central differences with relative step 1e-5,
// Richardson-extrapolated from steps h and h/2.
double exponent_derivative(const EstimationProblem& problem, double t);

// F_Q = sin^2(2 theta) exp(-2E) / (1 - exp(-2E)) (dE/dx)^2.
double qfi(const EstimationProblem& problem, double t);

struct EstimationReport {
    double t_opt{0.0};
    double qfi_at_opt{0.0};
    double relative_error_bound{0.0};  // 1 / (x sqrt(N_m F_Q))
    double empirical_error{std::numeric_limits<double>::quiet_NaN()};
    std::int64_t samples_used{0};
    bool boundary_warning{false};      // maximum sits on the edge of the time range
};

// Maximizes F_Q over [t_lo, t_hi] with theta fixed to pi/4: 200-point
// log-spaced scan followed by Brent refinement.
EstimationReport optimize_time(const EstimationProblem& problem, double t_lo, double t_hi);

struct EmpiricalError {
    double rms_relative_error{0.0};
    double mean_abs_relative_error{0.0};
    int repetitions{0};
    std::int64_t samples_used{0};
};

// Draws N_m Bernoulli outcomes with probability p_+(t), inverts the monotone
// map x -> p_+(t; x) on [x/2, 2x] for the ML estimate, and aggregates the
// relative error over `repetitions` seeded runs. Throws DomainError when the
// map is not strictly monotone on the bracket.
EmpiricalError simulate_estimation(const EstimationProblem& problem, double t, std::uint64_t seed,
                                   int repetitions = 200);

} // namespace bathforge::estimate
