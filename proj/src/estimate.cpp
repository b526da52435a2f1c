// estimate.cpp: Fisher information, optimal time and ML simulation

#include "bathforge/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "bathforge/errors.hpp"
#include "bathforge/numerics/monotone_cubic.hpp"

namespace bathforge::estimate {

namespace {

constexpr double kPi = std::numbers::pi;

kk::OverlapOptions overlap_options() {
    kk::OverlapOptions o;
    o.rel_tol = 1e-13;
    return o;
}

bool probe_is_pole(const kk::QubitProbeState& probe) { return probe.theta == 0.0 || probe.theta == 0.5 * kPi; }

double p_plus(const kk::QubitProbeState& probe, double e) {
    return 0.5 * (1.0 + probe.sigma_x0() * std::exp(-e));
}

} // namespace

BathFamily lorentzian_coupling(double g, double tau_c) {
    if (!(g > 0.0) || !(tau_c > 0.0)) throw std::invalid_argument("lorentzian_coupling: need g > 0, tau_c > 0");
    return {[tau_c](double x) { return spectra::BathSpectrum::lorentzian(x, tau_c); }, g, "g"};
}

BathFamily lorentzian_correlation_time(double g, double tau_c) {
    if (!(g > 0.0) || !(tau_c > 0.0))
        throw std::invalid_argument("lorentzian_correlation_time: need g > 0, tau_c > 0");
    return {[g](double x) { return spectra::BathSpectrum::lorentzian(g, x); }, tau_c, "tau_c"};
}

double coupling_for_t2(double t2, double tau_c) {
    if (!(t2 > 0.0) || !(tau_c > 0.0)) throw std::invalid_argument("coupling_for_t2: need T2 > 0, tau_c > 0");
    const double area = tau_c * t2 + tau_c * tau_c * std::expm1(-t2 / tau_c);
    return std::sqrt(kPi / area);
}

BathFamily lorentzian_t2(double t2, double tau_c) {
    coupling_for_t2(t2, tau_c);
    return {[tau_c](double x) { return spectra::BathSpectrum::lorentzian(coupling_for_t2(x, tau_c), tau_c); }, t2,
            "T2"};
}

ProtocolFamily free_evolution() {
    return {[](double t) { return filters::ControlProtocol::free(t); }, "Free"};
}

ProtocolFamily cpmg(int n_pulses) {
    if (n_pulses < 1) throw std::invalid_argument("cpmg: n_pulses must be >= 1");
    return {[n_pulses](double t) { return filters::ControlProtocol::cpmg(n_pulses, t); },
            "CPMG(" + std::to_string(n_pulses) + ")"};
}

double exponent(const EstimationProblem& problem, double x, double t) {
    const filters::FilterFunction filter(problem.protocol.make(t));
    const spectra::BathSpectrum spectrum = problem.bath.make(x);
    return kk::decoherence_rate(filter, spectrum, overlap_options()) * t;
}

double exponent_derivative(const EstimationProblem& problem, double t) {
    const double x = problem.bath.x;
    const double h = 1e-5 * x;
    const auto central = [&](double step) {
        return (exponent(problem, x + step, t) - exponent(problem, x - step, t)) / (2.0 * step);
    };
    const double d1 = central(h);
    const double d2 = central(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

double qfi(const EstimationProblem& problem, double t) {
    if (!(problem.bath.x > 0.0)) throw std::invalid_argument("qfi: x_B must be > 0");
    if (!(t > 0.0)) throw std::invalid_argument("qfi: t must be > 0");
    problem.probe.sigma_x0();  // validates the probe angles
    if (probe_is_pole(problem.probe)) return 0.0;
    const double s = std::sin(2.0 * problem.probe.theta);
    const double e = exponent(problem, problem.bath.x, t);
    const double de = exponent_derivative(problem, t);
    if (de == 0.0) return 0.0;
    if (e <= 0.0) return std::numeric_limits<double>::infinity();
    // exp(-2E) / (1 - exp(-2E)), accurate for small E through expm1.
    const double weight = std::exp(-2.0 * e) / (-std::expm1(-2.0 * e));
    return s * s * weight * de * de;
}

EstimationReport optimize_time(const EstimationProblem& problem, double t_lo, double t_hi) {
    if (!(t_lo > 0.0) || !(t_hi > t_lo)) throw std::invalid_argument("optimize_time: need 0 < t_lo < t_hi");
    if (problem.n_measurements < 1) throw std::invalid_argument("optimize_time: n_measurements must be >= 1");
    EstimationProblem p = problem;
    p.probe.theta = 0.25 * kPi;

    constexpr int kGrid = 200;
    const double u_lo = std::log(t_lo);
    const double u_hi = std::log(t_hi);
    std::vector<double> us(kGrid), fq(kGrid);
    for (int i = 0; i < kGrid; ++i) {
        us[i] = u_lo + (u_hi - u_lo) * i / (kGrid - 1);
        fq[i] = qfi(p, std::exp(us[i]));
        if (!std::isfinite(fq[i])) throw NumericError("optimize_time: F_Q is not finite on the time range");
    }
    const int best = static_cast<int>(std::max_element(fq.begin(), fq.end()) - fq.begin());

    EstimationReport rep;
    rep.boundary_warning = best == 0 || best == kGrid - 1;
    double u_best = us[best];
    double f_best = fq[best];
    if (!rep.boundary_warning) {
        const auto neg = [&](double u) { return -qfi(p, std::exp(u)); };
        std::uintmax_t iters = 200;
        const auto [u, v] = boost::math::tools::brent_find_minima(neg, us[best - 1], us[best + 1], 40, iters);
        if (-v >= f_best) {
            u_best = u;
            f_best = -v;
        }
    }
    rep.t_opt = std::exp(u_best);
    rep.qfi_at_opt = f_best;
    rep.samples_used = p.n_measurements;
    const double nm = static_cast<double>(p.n_measurements);
    rep.relative_error_bound = f_best > 0.0 ? 1.0 / (p.bath.x * std::sqrt(nm * f_best))
                                            : std::numeric_limits<double>::infinity();
    return rep;
}

EmpiricalError simulate_estimation(const EstimationProblem& problem, double t, std::uint64_t seed,
                                   int repetitions) {
    if (problem.n_measurements < 100) throw std::invalid_argument("simulate_estimation: need N_m >= 100");
    if (repetitions < 1) throw std::invalid_argument("simulate_estimation: repetitions must be >= 1");
    if (!(t > 0.0)) throw std::invalid_argument("simulate_estimation: t must be > 0");
    const double x = problem.bath.x;

    constexpr int kTable = 129;
    std::vector<double> xs(kTable), ps(kTable);
    for (int k = 0; k < kTable; ++k) {
        xs[k] = x * std::exp2(2.0 * k / (kTable - 1) - 1.0);
        ps[k] = p_plus(problem.probe, exponent(problem, xs[k], t));
    }
    const bool increasing = ps.back() > ps.front();
    for (int k = 1; k < kTable; ++k) {
        const double d = ps[k] - ps[k - 1];
        if (!(increasing ? d > 0.0 : d < 0.0))
            throw DomainError("simulate_estimation: p_+(x) is not strictly monotone on [x/2, 2x]; "
                              "estimation is ill-posed at this t");
    }
    if (!increasing) {
        std::reverse(xs.begin(), xs.end());
        std::reverse(ps.begin(), ps.end());
    }
    const numerics::MonotoneCubic inverse(ps, xs);
    const double p_true = p_plus(problem.probe, exponent(problem, x, t));

    double sum_sq = 0.0;
    double sum_abs = 0.0;
    const double nm = static_cast<double>(problem.n_measurements);
    for (int r = 0; r < repetitions; ++r) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(r)};
        std::mt19937_64 rng(seq);
        std::binomial_distribution<std::int64_t> draw(problem.n_measurements, p_true);
        const double p_hat = std::clamp(static_cast<double>(draw(rng)) / nm, ps.front(), ps.back());
        const double err = (inverse(p_hat) - x) / x;
        sum_sq += err * err;
        sum_abs += std::abs(err);
    }
    EmpiricalError out;
    out.repetitions = repetitions;
    out.samples_used = problem.n_measurements * repetitions;
    out.rms_relative_error = std::sqrt(sum_sq / repetitions);
    out.mean_abs_relative_error = sum_abs / repetitions;
    return out;
}

} // namespace bathforge::estimate
