// collective.cpp: collective dephasing in the Dicke basis

#include "bathforge/collective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "bathforge/errors.hpp"
#include "bathforge/numerics/quadrature.hpp"

namespace bathforge::collective {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

void check_n(int n) {
    if (n < 1 || n > kMaxQubits)
        throw std::invalid_argument("DickeState: n_qubits must lie in [1, " + std::to_string(kMaxQubits) + "]");
}

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

// t^2 (x - sin x) / x^2 with x = w t.
double lamb_weight(double w, double t) {
    const double x = w * t;
    if (std::abs(x) < 1e-2) {
        const double x2 = x * x;
        return t * t * x * (1.0 / 6.0 - x2 / 120.0 + x2 * x2 / 5040.0);
    }
    return t * t * (x - std::sin(x)) / (x * x);
}

double lamb_phase(const kk::SpectralDensity& g0, double max_feature, double t) {
    if (t == 0.0) return 0.0;
    const double a = std::max(g0.support.lo, 0.0);
    const double b = g0.support.hi;
    if (!(b > a)) return 0.0;

    const double period = 2.0 * kPi / t;
    double w_split = std::max(1000.0 * period, 50.0 * max_feature);
    w_split = std::min(w_split, 1e5 * period);
    w_split = period * std::ceil(w_split / period);

    numerics::QuadratureOptions opts;
    opts.rel_tol = 1e-11;
    const auto body = [&](double w) { return g0.value(w) * lamb_weight(w, t); };
    const double exact_hi = std::min(b, w_split);
    auto pts = numerics::uniform_breakpoints(a, exact_hi, period, 200000);
    pts = numerics::merge_breakpoints(std::move(pts), g0.features);
    auto res = numerics::integrate(body, pts, opts);
    numerics::require_converged(res, "lamb phase f(t)");
    double total = res.value;
    if (b <= w_split) return total;

    // Beyond w_split: t int G / w minus the oscillating part, integrated by parts.
    const auto mean = [&](double w) { return g0.value(w) / w; };
    numerics::QuadratureResult tail;
    double edge_terms = std::cos(w_split * t) * g0.value(w_split) / (w_split * w_split);
    if (std::isfinite(b)) {
        std::vector<double> tp{w_split, b};
        tp = numerics::merge_breakpoints(std::move(tp), g0.features);
        tail = numerics::integrate(mean, tp, opts);
        edge_terms -= std::cos(b * t) * g0.value(b) / (b * b);
    } else {
        tail = numerics::integrate_to_infinity(mean, w_split, std::max(w_split, max_feature), opts);
    }
    numerics::require_converged(tail, "lamb phase f(t) tail");
    total += t * tail.value - edge_terms / t;
    return total;
}

double max_feature_of(const kk::SpectralDensity& g) {
    double m = g.scale;
    for (double f : g.features)
        if (std::isfinite(f)) m = std::max(m, std::abs(f));
    return m;
}

} // namespace

DickeState::DickeState(int n_qubits, Eigen::MatrixXcd rho) : n_(n_qubits), rho_(std::move(rho)) {
    check_n(n_);
    if (rho_.rows() != n_ + 1 || rho_.cols() != n_ + 1)
        throw std::invalid_argument("DickeState: density matrix must be (N+1) x (N+1)");
}

Eigen::VectorXcd coherent_amplitudes(int n, double theta, double phi) {
    check_n(n);
    Eigen::VectorXcd v(n + 1);
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    for (int k = 0; k <= n; ++k)
        v(k) = std::sqrt(binomial(n, k)) * std::pow(c, n - k) * std::pow(s, k) * std::polar(1.0, k * phi);
    return v;
}

DickeState DickeState::from_pure(int n, const Eigen::VectorXcd& amplitudes) {
    check_n(n);
    if (amplitudes.size() != n + 1) throw std::invalid_argument("DickeState: amplitude vector must have N+1 entries");
    const double norm = amplitudes.norm();
    if (!(norm > 0.0)) throw std::invalid_argument("DickeState: zero amplitude vector");
    const Eigen::VectorXcd v = amplitudes / norm;
    return DickeState(n, v * v.adjoint());
}

DickeState DickeState::all_up(int n) {
    check_n(n);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n + 1);
    v(0) = 1.0;
    return from_pure(n, v);
}

DickeState DickeState::all_down(int n) {
    check_n(n);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n + 1);
    v(n) = 1.0;
    return from_pure(n, v);
}

DickeState DickeState::coherent(int n, double theta, double phi) {
    return from_pure(n, coherent_amplitudes(n, theta, phi));
}

DickeState DickeState::ghz(int n, double chi) {
    check_n(n);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n + 1);
    v(0) = 1.0;
    v(n) += std::polar(1.0, chi);
    return from_pure(n, v);
}

double DickeState::trace() const { return rho_.trace().real(); }

double DickeState::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double DickeState::hermiticity_defect() const { return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff(); }

DephasingKernel dephasing_kernel(const spectra::ThermalBath& bath, double suppression) {
    if (!(suppression >= 0.0 && suppression <= 1.0))
        throw std::invalid_argument("dephasing_kernel: suppression factor must lie in [0, 1]");
    const auto& g = bath.spectrum;
    const auto sup = g.support();
    const bool covers_zero = sup.lo <= 0.0 && sup.hi >= 0.0;
    if (bath.temperature > 0.0 && covers_zero && g.value_at_zero() > 0.0)
        throw DomainError("dephasing_kernel: gamma(t) is infrared divergent for " + g.describe() +
                          " at T > 0 (G(0+) > 0 makes coth(w/2T)/w^2 weight non-integrable)");

    const kk::SpectralDensity thermal = kk::density(bath);
    const kk::SpectralDensity zero_t = kk::density(spectra::ThermalBath{g, 0.0});
    const double max_feature = max_feature_of(zero_t);

    DephasingKernel k;
    // (1 - cos wt) / w^2 = pi t F_t(w) for the free filter, and
    // G coth(w/2T) on w > 0 folds into G_T(w) + G_T(-w).
    k.decoherence_exponent = [thermal, suppression](double t) {
        if (t == 0.0) return 0.0;
        if (!(t > 0.0)) throw std::invalid_argument("dephasing kernel: t must be >= 0");
        const filters::FilterFunction free(filters::ControlProtocol::free(t));
        kk::OverlapOptions opts;
        opts.rel_tol = 1e-11;
        return suppression * kPi * t * kk::decoherence_rate(free, thermal, opts);
    };
    k.lamb_phase = [zero_t, max_feature](double t) {
        if (!(t >= 0.0)) throw std::invalid_argument("dephasing kernel: t must be >= 0");
        return lamb_phase(zero_t, max_feature, t);
    };
    return k;
}

DephasingKernel markovian_kernel(double f_rate, double gamma_rate) {
    if (!(gamma_rate >= 0.0)) throw std::invalid_argument("markovian_kernel: gamma rate must be >= 0");
    return {[f_rate](double t) { return f_rate * t; }, [gamma_rate](double t) { return gamma_rate * t; }};
}

DickeState evolve(const DickeState& state, const DephasingKernel& kernel, double omega0, double t) {
    const int n = state.n_qubits();
    const double f = kernel.lamb_phase(t);
    const double gamma = kernel.decoherence_exponent(t);
    const Eigen::MatrixXcd& in = state.rho();
    Eigen::MatrixXcd out(n + 1, n + 1);
    for (int k = 0; k <= n; ++k) {
        out(k, k) = in(k, k);
        const double m = DickeState::m_of(k, n);
        for (int kp = k + 1; kp <= n; ++kp) {
            const double mp = DickeState::m_of(kp, n);
            const double dm = m - mp;
            const double phase = -omega0 * dm * t + f * (mp * mp - m * m);
            out(k, kp) = in(k, kp) * std::polar(std::exp(-dm * dm * gamma), phase);
            out(kp, k) = std::conj(out(k, kp));
        }
    }
    return DickeState(n, std::move(out));
}

double cat_fidelity(const DickeState& state, double theta, double phi) {
    const int n = state.n_qubits();
    if (n < 2) throw std::invalid_argument("cat fidelity: needs N >= 2");
    const Eigen::VectorXcd a = coherent_amplitudes(n, theta, phi);
    const Eigen::VectorXcd b = coherent_amplitudes(n, kPi - theta, phi + kPi);
    const auto& rho = state.rho();
    const double aa = (a.adjoint() * rho * a)(0).real();
    const double bb = (b.adjoint() * rho * b)(0).real();
    const cd ab = (a.adjoint() * rho * b)(0);
    return 0.5 * (aa + bb) + std::abs(ab);
}

double ghz_fidelity(const DickeState& state) {
    const int n = state.n_qubits();
    if (n < 2) throw std::invalid_argument("ghz_fidelity: needs N >= 2");
    const auto& rho = state.rho();
    return 0.5 * (rho(0, 0).real() + rho(n, n).real()) + std::abs(rho(0, n));
}

CatFidelity best_equatorial_cat_fidelity(const DickeState& state) {
    constexpr int kScan = 720;
    const auto fid = [&](double phi) { return cat_fidelity(state, 0.5 * kPi, phi); };
    int best = 0;
    double best_val = -1.0;
    const double step = kPi / kScan;
    for (int i = 0; i < kScan; ++i) {
        const double v = fid(i * step);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    std::uintmax_t iters = 200;
    const auto [phi, neg] = boost::math::tools::brent_find_minima([&](double p) { return -fid(p); },
                                                                  (best - 1) * step, (best + 1) * step, 50, iters);
    if (-neg >= best_val) return {-neg, phi};
    return {best_val, best * step};
}

double lamb_shift_rate(const kk::SpectralDensity& g) {
    const double max_feature = max_feature_of(g);
    const double reach = std::max(std::abs(g.support.lo), std::abs(g.support.hi));
    const auto odd = [&](double w) { return (g.value(w) - g.value(-w)) / w; };

    std::vector<double> feats;
    for (double f : g.features)
        if (std::isfinite(f) && f != 0.0) feats.push_back(std::abs(f));

    numerics::QuadratureOptions opts;
    opts.rel_tol = 1e-12;
    opts.abs_tol = 1e-300;
    const auto excised = [&](double delta) {
        numerics::QuadratureResult r;
        if (std::isfinite(reach)) {
            if (reach <= delta) return 0.0;
            std::vector<double> pts{delta, reach};
            pts = numerics::merge_breakpoints(std::move(pts), feats);
            r = numerics::integrate(odd, pts, opts);
        } else {
            const double mid = std::max(2.0 * max_feature, 2.0 * delta);
            std::vector<double> pts{delta, mid};
            pts = numerics::merge_breakpoints(std::move(pts), feats);
            r = numerics::combine(numerics::integrate(odd, pts, opts),
                                  numerics::integrate_to_infinity(odd, mid, max_feature, opts));
        }
        numerics::require_converged(r, "lamb_shift_rate");
        return r.value;
    };

    const double delta = 1e-3 * g.scale;
    const double i1 = excised(delta);
    const double i2 = excised(0.5 * delta);
    const double i4 = excised(0.25 * delta);
    const double r1 = 2.0 * i2 - i1;
    const double r2 = 2.0 * i4 - i2;
    const double value = (4.0 * r2 - r1) / 3.0;
    const double spread = std::abs(r2 - r1);
    if (!std::isfinite(value) || spread > 1e-5 * std::max(std::abs(value), std::abs(i1)) + 1e-300) {
        std::ostringstream msg;
        msg << "lamb_shift_rate: principal value of " << g.label << " does not converge (excised integrals "
            << i1 << ", " << i2 << ", " << i4 << ")";
        throw NumericError(msg.str());
    }
    return value;
}

double lamb_shift_rate(const spectra::BathSpectrum& spectrum) { return lamb_shift_rate(kk::density(spectrum)); }

Dominance dominance_ratio(const spectra::ThermalBath& bath) {
    Dominance d;
    d.f_ab = lamb_shift_rate(kk::density(spectra::ThermalBath{bath.spectrum, 0.0}));
    d.gamma = 2.0 * kPi * spectra::thermal_spectrum(bath, 0.0);
    if (d.gamma == 0.0) {
        d.infinite = true;
        d.ratio = std::numeric_limits<double>::infinity();
    } else {
        d.ratio = d.f_ab / d.gamma;
    }
    return d;
}

} // namespace bathforge::collective
