// waveguide.cpp: RDDI scaling, two-atom exchange and TEM vacuum energies

#include "bathforge/waveguide.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bathforge/errors.hpp"
#include "bathforge/numerics/quadrature.hpp"

namespace bathforge::waveguide {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

// I(b) = int_0^inf s^2 exp(-b s) / (1 + s^2)^2 ds
double tem_moment(double b) {
    const auto f = [b](double s) {
        const double d = 1.0 + s * s;
        return s * s * std::exp(-b * s) / (d * d);
    };
    numerics::QuadratureOptions opts;
    opts.rel_tol = 1e-12;
    const double scale = std::min(1.0, 1.0 / b);
    auto r = numerics::integrate_to_infinity(f, 0.0, scale, opts);
    numerics::require_converged(r, "TEM mode integral");
    return r.value;
}

} // namespace

Rddi rddi_strength_range(const BandEdgeConfig& c) {
    if (!(c.omega_co > 0.0) || !(c.omega_a > 0.0))
        throw std::invalid_argument("rddi_strength_range: frequencies must be positive");
    if (!(c.gamma_fs >= 0.0) || !(c.lambda_a > 0.0))
        throw std::invalid_argument("rddi_strength_range: need gamma_fs >= 0 and lambda_a > 0");
    if (c.omega_a >= c.omega_co)
        throw DomainError("rddi_strength_range: omega_a >= omega_co, no bound state below the band edge");
    const double root = std::sqrt(-std::expm1(std::log(c.omega_a / c.omega_co)));
    return {c.gamma_fs / root, c.lambda_a / root};
}

double gap_exchange_integral(const spectra::BathSpectrum& spectrum, double omega_a) {
    const auto sup = spectrum.support();
    if (!std::isfinite(sup.lo)) throw DomainError("gap_exchange_integral: spectrum has no lower band edge");
    if (!(omega_a < sup.lo))
        throw DomainError("gap_exchange_integral: omega_a must lie below the spectral support");
    const double lo = sup.lo;
    // w = lo + u^2 removes inverse-square-root edge singularities.
    const auto f = [&](double u) {
        const double w = lo + u * u;
        if (w > sup.hi) return 0.0;
        return 2.0 * u * spectrum.value_or_zero(w) / (w - omega_a);
    };
    numerics::QuadratureOptions opts;
    opts.rel_tol = 1e-12;
    numerics::QuadratureResult r;
    if (std::isfinite(sup.hi)) {
        r = numerics::integrate(f, 0.0, std::sqrt(sup.hi - lo), opts, 16);
    } else {
        r = numerics::integrate_to_infinity(f, 0.0, std::sqrt(lo - omega_a), opts);
    }
    numerics::require_converged(r, "gap_exchange_integral");
    return r.value;
}

Eigen::Matrix4cd two_atom_state(double delta, double gamma_fs, double t) {
    const double decay = std::exp(-0.5 * gamma_fs * t);
    const cd c1 = decay * std::cos(delta * t);
    const cd c2 = cd(0.0, -1.0) * decay * std::sin(delta * t);
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    rho(1, 1) = std::norm(c1);
    rho(2, 2) = std::norm(c2);
    rho(1, 2) = c1 * std::conj(c2);
    rho(2, 1) = std::conj(rho(1, 2));
    rho(3, 3) = -std::expm1(-gamma_fs * t);
    return rho;
}

double x_state_concurrence(const Eigen::Matrix4cd& r) {
    const double a = std::abs(r(1, 2)) - std::sqrt(std::max(0.0, r(0, 0).real() * r(3, 3).real()));
    const double b = std::abs(r(0, 3)) - std::sqrt(std::max(0.0, r(1, 1).real() * r(2, 2).real()));
    return 2.0 * std::max({0.0, a, b});
}

double concurrence(const Eigen::Matrix4cd& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    const Eigen::Vector4d lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::Matrix4cd root = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
    Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    // The square roots of the eigenvalues of rho (Y rho* Y) are the singular
    // values of sqrt(rho) Y sqrt(rho)*.
    const Eigen::Matrix4cd m = root * flip * root.conjugate();
    const Eigen::Vector4d s = Eigen::JacobiSVD<Eigen::Matrix4cd>(m).singularValues();
    return std::max(0.0, s(0) - s(1) - s(2) - s(3));
}

std::vector<TwoAtomSample> two_atom_dynamics(double delta, double gamma_fs, const std::vector<double>& t_grid) {
    if (!(delta >= 0.0) || !(gamma_fs >= 0.0))
        throw std::invalid_argument("two_atom_dynamics: delta and gamma_fs must be >= 0");
    std::vector<TwoAtomSample> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        if (!(t >= 0.0)) throw std::invalid_argument("two_atom_dynamics: times must be >= 0");
        const Eigen::Matrix4cd rho = two_atom_state(delta, gamma_fs, t);
        out.push_back({t, rho(1, 1).real(), rho(2, 2).real(), rho(3, 3).real(), x_state_concurrence(rho)});
    }
    return out;
}

Table two_atom_table(const std::vector<TwoAtomSample>& samples) {
    Table t;
    t.columns = {"t[s]", "P1[1]", "P2[1]", "P_gg[1]", "concurrence[1]"};
    for (const auto& s : samples) t.add_row({s.t, s.p1, s.p2, s.p_ground, s.concurrence});
    return t;
}

ExchangePreset rubidium_band_edge_preset() {
    const double exchange = 1.8e-9;
    return {kPi / (2.0 * exchange), 2.0 * kPi * 5.75e6, exchange};
}

double casimir_shape(double x, Zone zone) {
    if (!(x > 0.0)) throw std::invalid_argument("casimir_shape: z / lambda_e must be positive");
    if (zone == Zone::Near) {
        if (!(x < 0.1)) {
            std::ostringstream msg;
            msg << "casimir_shape: near-zone form is valid only for z/lambda_e < 0.1 (got " << x << ")";
            throw DomainError(msg.str());
        }
        return kPi + 16.0 * kPi * x * std::log(x);
    }
    if (!(x > 10.0)) {
        std::ostringstream msg;
        msg << "casimir_shape: far-zone form is valid only for z/lambda_e > 10 (got " << x << ")";
        throw DomainError(msg.str());
    }
    const double tp = 2.0 * kPi;
    return 1.0 / (tp * tp * tp * x * x * x);
}

double tem_shape(double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("tem_shape: z / lambda_e must be >= 0");
    return 4.0 * tem_moment(4.0 * kPi * x);
}

TemPairEnergy tem_pair_energy(const TemLineConfig& c, double z) {
    if (!(z > 0.0)) throw std::invalid_argument("tem_pair_energy: z must be > 0");
    if (!(c.lambda_e > 0.0) || !(c.a > 0.0)) throw std::invalid_argument("tem_pair_energy: need lambda_e, a > 0");
    const double we = 2.0 * kPi / c.lambda_e;
    const double prefactor = c.alpha0 * c.alpha0 * we * we * we / (c.a * c.a);
    const double k_max = 1e3 / c.lambda_e;
    const auto energy = [&](double k) { return -prefactor * tem_moment((2.0 * z + 1.0 / k) * we); };
    const double u1 = energy(k_max);
    const double u2 = energy(2.0 * k_max);
    TemPairEnergy out;
    out.energy = 2.0 * u2 - u1;
    out.regulator_shift = u2 - u1;
    out.tem_dominant = z > 10.0 * c.a;
    if (!std::isfinite(out.energy) || std::abs(out.regulator_shift) > 1e-2 * std::abs(u2)) {
        std::ostringstream msg;
        msg << "tem_pair_energy: regulator extrapolation did not converge at z = " << z << " (U(k_max) = " << u1
            << ", U(2 k_max) = " << u2 << ")";
        throw NumericError(msg.str());
    }
    return out;
}

double nonadditivity_ratio(double alpha0, double z, const Geometry& geometry) {
    if (!(alpha0 > 0.0) || !(z > 0.0)) throw std::invalid_argument("nonadditivity_ratio: inputs must be positive");
    if (const auto* tem = std::get_if<Tem1D>(&geometry)) {
        if (!(tem->a > 0.0)) throw std::invalid_argument("nonadditivity_ratio: a must be positive");
        return alpha0 / (tem->a * tem->a * z);
    }
    return alpha0 / (z * z * z);
}

} // namespace bathforge::waveguide
