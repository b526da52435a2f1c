// test_estimate.cpp: Fisher-information estimation of bath parameters

#include <cmath>
#include <numbers>
#include <vector>

#include "bathforge/errors.hpp"
#include "bathforge/estimate.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bathforge;
using estimate::EstimationProblem;

namespace {

EstimationProblem tau_problem(double g, int n_pulses, std::int64_t n_meas = 10000) {
    EstimationProblem p;
    p.bath = estimate::lorentzian_correlation_time(g, 1.0);
    p.protocol = n_pulses == 0 ? estimate::free_evolution() : estimate::cpmg(n_pulses);
    p.n_measurements = n_meas;
    return p;
}

double oracle_exponent(double t, double tau, double g, int n) {
    return oracle::lorentzian_exponent(oracle::cpmg_boundaries(n, t), g, tau);
}

// Relative error bound at theta = pi/4 from the time-domain exponent.
double oracle_bound(double t, double g, int n) {
    const double tau = 1.0, h = 1e-4;
    const double e = oracle_exponent(t, tau, g, n);
    const double de = (oracle_exponent(t, tau + h, g, n) - oracle_exponent(t, tau - h, g, n)) / (2.0 * h);
    const double fq = de * de * std::exp(-2.0 * e) / (-std::expm1(-2.0 * e));
    return 1.0 / (tau * std::sqrt(fq));
}

} // namespace

TEST_CASE("exponent and its derivative against the time-domain oracle") {
    for (int n : {0, 1, 8}) {
        const auto p = tau_problem(3.0, n);
        for (double t : {0.05, 0.7, 3.0}) {
            CHECK(estimate::exponent(p, 1.3, t) == doctest::Approx(oracle_exponent(t, 1.3, 3.0, n)).epsilon(1e-9));
            const double h = 1e-4;
            const double fd = (oracle_exponent(t, 1.0 + h, 3.0, n) - oracle_exponent(t, 1.0 - h, 3.0, n)) / (2.0 * h);
            CHECK(estimate::exponent_derivative(p, t) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("quantum Fisher information at the equator and the poles") {
    auto p = tau_problem(5.0, 0);
    const double t = 0.5;
    const double e = oracle_exponent(t, 1.0, 5.0, 0);
    const double bound = oracle_bound(t, 5.0, 0);
    CHECK(1.0 / std::sqrt(estimate::qfi(p, t)) == doctest::Approx(bound).epsilon(1e-6));
    CHECK(e > 0.0);
    p.probe.theta = 0.0;
    CHECK(estimate::qfi(p, t) == 0.0);
    CHECK_THROWS_AS(estimate::qfi(p, -1.0), std::invalid_argument);
}

TEST_CASE("optimal time matches a dense oracle scan") {
    for (auto [g, n] : {std::pair{5.0, 0}, std::pair{10.0, 8}}) {
        double best = 1e300, t_best = 0.0;
        for (int i = 0; i < 4000; ++i) {
            const double t = std::pow(10.0, -3.0 + 4.0 * i / 3999.0);
            const double b = oracle_bound(t, g, n);
            if (b < best) best = b, t_best = t;
        }
        const auto rep = estimate::optimize_time(tau_problem(g, n, 1), 1e-3, 10.0);
        CHECK(rep.relative_error_bound == doctest::Approx(best).epsilon(1e-4));
        CHECK(rep.t_opt == doctest::Approx(t_best).epsilon(0.02));
        CHECK_FALSE(rep.boundary_warning);
    }
}

TEST_CASE("free-evolution error grows with g tau_c while CPMG(8) stays near 2.5") {
    const auto f5 = estimate::optimize_time(tau_problem(5.0, 0, 1), 1e-3, 10.0);
    CHECK(f5.relative_error_bound == doctest::Approx(14.29).epsilon(2e-3));
    const auto c10 = estimate::optimize_time(tau_problem(10.0, 8, 1), 1e-3, 10.0);
    CHECK(c10.relative_error_bound > 1.0);
    CHECK(c10.relative_error_bound < 5.0);
}

TEST_CASE("bound decreases strictly with the number of measurements") {
    double prev = 1e300;
    for (std::int64_t n : {100, 1000, 10000}) {
        const auto rep = estimate::optimize_time(tau_problem(5.0, 0, n), 1e-3, 10.0);
        CHECK(rep.relative_error_bound < prev);
        CHECK(rep.relative_error_bound * std::sqrt(static_cast<double>(n)) == doctest::Approx(14.29).epsilon(2e-3));
        prev = rep.relative_error_bound;
    }
}

TEST_CASE("Monte-Carlo maximum likelihood is efficient and deterministic") {
    const auto p = tau_problem(5.0, 0, 1000000);
    const auto rep = estimate::optimize_time(p, 1e-3, 10.0);
    const auto a = estimate::simulate_estimation(p, rep.t_opt, 42);
    const auto b = estimate::simulate_estimation(p, rep.t_opt, 42);
    CHECK(a.rms_relative_error == b.rms_relative_error);
    CHECK(a.mean_abs_relative_error == b.mean_abs_relative_error);
    CHECK(a.repetitions == 200);
    CHECK(a.rms_relative_error == doctest::Approx(rep.relative_error_bound).epsilon(0.25));
    const auto c = estimate::simulate_estimation(p, rep.t_opt, 43);
    CHECK(c.rms_relative_error != a.rms_relative_error);

    const auto p4 = tau_problem(5.0, 0, 10000);
    const auto r4 = estimate::optimize_time(p4, 1e-3, 10.0);
    CHECK(estimate::simulate_estimation(p4, r4.t_opt, 7).rms_relative_error >= 0.8 * r4.relative_error_bound);
}

TEST_CASE("a fully dephased probe carries no information") {
    const auto p = tau_problem(20.0, 0, 10000);
    CHECK_THROWS_AS(estimate::simulate_estimation(p, 10.0, 1), DomainError);
    CHECK_THROWS_AS(estimate::simulate_estimation(tau_problem(5.0, 0, 10), 0.5, 1), std::invalid_argument);
}

TEST_CASE("coupling for a target T2") {
    for (double tau : {0.1, 1.0, 4.0}) {
        const double t2 = 2.5;
        const double g = estimate::coupling_for_t2(t2, tau);
        CHECK(oracle_exponent(t2, tau, g, 0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(estimate::coupling_for_t2(0.0, 1.0), std::invalid_argument);
}
