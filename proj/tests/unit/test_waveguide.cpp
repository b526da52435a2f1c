// test_waveguide.cpp: band-edge exchange, concurrence and Casimir shapes

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "bathforge/errors.hpp"
#include "bathforge/waveguide.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bathforge;
using namespace bathforge::waveguide;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// Wootters concurrence from the eigenvalues of rho (Y x Y) rho* (Y x Y).
double wootters_eigen(const Eigen::Matrix4cd& rho) {
    Eigen::Matrix2cd y;
    y << 0, cd(0, -1), cd(0, 1), 0;
    Eigen::Matrix4cd yy;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) yy.block<2, 2>(2 * i, 2 * j) = y(i, j) * y;
    const Eigen::Matrix4cd r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(r);
    std::vector<double> l;
    for (int i = 0; i < 4; ++i) l.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
    std::sort(l.rbegin(), l.rend());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

Eigen::Matrix4cd random_density(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::Matrix4cd a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = cd(n(rng), n(rng));
    Eigen::Matrix4cd rho = a * a.adjoint();
    return rho / rho.trace();
}

// -(alpha0^2 / a^2) int_0^inf xi^2 (1 + xi^2/we^2)^-2 exp(-2 xi z) dxi by
// composite Simpson on xi = s / (1 - s).
double oracle_tem_energy(const TemLineConfig& c, double z) {
    const double we = 2.0 * kPi / c.lambda_e;
    const int n = 200000;
    double sum = 0.0;
    for (int i = 1; i < n; ++i) {
        const double s = double(i) / n;
        const double xi = s / (1.0 - s);
        const double jac = 1.0 / ((1.0 - s) * (1.0 - s));
        const double a = 1.0 / (1.0 + xi * xi / (we * we));
        const double w = (i % 2) ? 4.0 : 2.0;
        sum += w * xi * xi * a * a * std::exp(-2.0 * xi * z) * jac;
    }
    return -(c.alpha0 * c.alpha0 / (c.a * c.a)) * sum / (3.0 * n);
}

} // namespace

TEST_CASE("band-edge exchange strength and range") {
    const auto r = rddi_strength_range({0.75, 1.0, 1.3, 0.7});
    CHECK(r.delta == doctest::Approx(2.0 * 1.3).epsilon(1e-14));
    CHECK(r.xi == doctest::Approx(2.0 * 0.7).epsilon(1e-14));

    const auto floor = rddi_strength_range({1e-12, 1.0, 1.3, 0.7});
    CHECK(floor.delta == doctest::Approx(1.3).epsilon(1e-10));
    CHECK(floor.xi == doctest::Approx(0.7).epsilon(1e-10));

    std::vector<double> gap, delta;
    for (int i = 0; i <= 40; ++i) {
        const double d = std::pow(10.0, -5.0 + 4.0 * i / 40.0);
        gap.push_back(d);
        delta.push_back(rddi_strength_range({1.0 - d, 1.0, 1.0, 1.0}).delta);
    }
    CHECK(oracle::loglog_slope(gap, delta) == doctest::Approx(-0.5).epsilon(0.02 / 0.5));

    const auto base = rddi_strength_range({0.6, 1.0, 1.0, 1.0});
    const auto scaled = rddi_strength_range({0.6, 1.0, 3.0, 5.0});
    CHECK(scaled.delta == doctest::Approx(3.0 * base.delta).epsilon(1e-15));
    CHECK(scaled.xi == doctest::Approx(5.0 * base.xi).epsilon(1e-15));

    CHECK_THROWS_AS(rddi_strength_range({1.0, 1.0, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(rddi_strength_range({1.2, 1.0, 1.0, 1.0}), DomainError);
}

TEST_CASE("gap exchange integral of the band-edge density reproduces the strength law") {
    for (double wa : {0.2, 0.75, 0.99}) {
        const double gfs = 0.4;
        const double got = gap_exchange_integral(spectra::BathSpectrum::band_gap(1.0, gfs), wa);
        CHECK(got == doctest::Approx(kPi * gfs / std::sqrt(1.0 - wa)).epsilon(1e-7));
    }
    CHECK_THROWS_AS(gap_exchange_integral(spectra::BathSpectrum::band_gap(1.0, 1.0), 1.5), DomainError);
    CHECK_THROWS_AS(gap_exchange_integral(spectra::BathSpectrum::flat(1.0), 0.5), DomainError);
}

TEST_CASE("lossless and uncoupled two-atom dynamics") {
    std::vector<double> ts;
    for (int i = 0; i <= 100; ++i) ts.push_back(0.05 * i);
    const double d = 1.7;
    for (const auto& s : two_atom_dynamics(d, 0.0, ts)) {
        CHECK(std::abs(s.p1 - std::pow(std::cos(d * s.t), 2)) < 1e-10);
        CHECK(std::abs(s.p2 - std::pow(std::sin(d * s.t), 2)) < 1e-10);
    }
    const auto peak = two_atom_dynamics(d, 0.0, {kPi / (4.0 * d)});
    CHECK(peak[0].concurrence == doctest::Approx(1.0).epsilon(1e-12));

    for (const auto& s : two_atom_dynamics(0.0, 0.8, ts)) {
        CHECK(s.p1 == doctest::Approx(std::exp(-0.8 * s.t)).epsilon(1e-12));
        CHECK(s.concurrence == 0.0);
    }
}

TEST_CASE("two-atom dynamics conserves probability and keeps concurrence in range") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double d = 5.0 * u(rng), g = 2.0 * u(rng);
        std::vector<double> ts;
        for (int i = 0; i < 20; ++i) ts.push_back(10.0 * u(rng));
        for (const auto& s : two_atom_dynamics(d, g, ts)) {
            CHECK(std::abs(s.p1 + s.p2 + s.p_ground - 1.0) < 1e-10);
            CHECK(s.concurrence >= 0.0);
            CHECK(s.concurrence <= 1.0);
            const Eigen::Matrix4cd rho = two_atom_state(d, g, s.t);
            CHECK(std::abs(rho.trace().real() - 1.0) < 1e-10);
            // The eigenvalue route takes square roots of near-zero eigenvalues.
            CHECK(std::abs(s.concurrence - wootters_eigen(rho)) < 1e-6);
        }
    }
}

TEST_CASE("concurrence routes agree") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Matrix4cd rho = random_density(rng);
        CHECK(std::abs(concurrence(rho) - wootters_eigen(rho)) < 1e-6);
    }
    for (double t : {0.1, 0.4, 1.3}) {
        const Eigen::Matrix4cd rho = two_atom_state(2.0, 0.3, t);
        const double c12 = 2.0 * std::abs(rho(1, 2));
        CHECK(x_state_concurrence(rho) == doctest::Approx(c12).epsilon(1e-12));
        CHECK(concurrence(rho) == doctest::Approx(c12).epsilon(1e-9));
    }
    // Bell state and product state.
    Eigen::Vector4cd bell(0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0);
    CHECK(concurrence(bell * bell.adjoint()) == doctest::Approx(1.0).epsilon(1e-10));
    Eigen::Vector4cd prod(0.5, 0.5, 0.5, 0.5);
    CHECK(concurrence(prod * prod.adjoint()) == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("peak concurrence grows with delta / gamma") {
    double prev = -1.0;
    for (int i = 0; i <= 30; ++i) {
        const double ratio = std::pow(10.0, -1.0 + 3.0 * i / 30.0);
        const double d = 1.0;
        const auto s = two_atom_dynamics(d, d / ratio, {kPi / (4.0 * d)});
        CHECK(s[0].concurrence > prev);
        prev = s[0].concurrence;
    }
}

TEST_CASE("rubidium band-edge preset peak concurrence") {
    const auto p = rubidium_band_edge_preset();
    CHECK(p.delta * p.exchange_time == doctest::Approx(kPi / 2.0));
    std::vector<double> ts;
    for (int i = 0; i <= 2000; ++i) ts.push_back(4.0 * p.exchange_time * i / 2000.0);
    double peak = 0.0;
    for (const auto& s : two_atom_dynamics(p.delta, p.gamma_fs, ts)) peak = std::max(peak, s.concurrence);
    CHECK(peak >= 0.90);
    CHECK(peak <= 0.99);
}

TEST_CASE("near and far Casimir shapes") {
    CHECK(casimir_shape(1e-12, Zone::Near) == doctest::Approx(kPi).epsilon(1e-9));
    CHECK(casimir_shape(10.0 + 1e-12, Zone::Far) == doctest::Approx(1e-3 / std::pow(2.0 * kPi, 3)).epsilon(1e-10));
    std::vector<double> x, f;
    for (int i = 0; i <= 20; ++i) {
        x.push_back(20.0 * std::pow(10.0, 2.0 * i / 20.0));
        f.push_back(casimir_shape(x.back(), Zone::Far));
    }
    CHECK(std::abs(oracle::loglog_slope(x, f) + 3.0) < 0.01);
    CHECK_THROWS_AS(casimir_shape(0.5, Zone::Near), DomainError);
    CHECK_THROWS_AS(casimir_shape(5.0, Zone::Far), DomainError);
    CHECK_THROWS_AS(casimir_shape(-1.0, Zone::Far), std::invalid_argument);
}

TEST_CASE("TEM pair energy against an independent imaginary-axis quadrature") {
    const TemLineConfig c{1.0, 0.01, 1.0};
    for (double z : {0.05, 1.0, 30.0}) {
        const auto e = tem_pair_energy(c, z);
        CHECK(e.energy < 0.0);
        // Residual second-order regulator term after extrapolation.
        CHECK(e.energy == doctest::Approx(oracle_tem_energy(c, z)).epsilon(1e-4));
        CHECK(e.tem_dominant == (z > 10.0 * c.a));
    }
    std::vector<double> z, u;
    for (int i = 0; i <= 10; ++i) {
        z.push_back(30.0 * std::pow(10.0, double(i) / 10.0));
        u.push_back(tem_pair_energy(c, z.back()).energy);
    }
    CHECK(std::abs(oracle::loglog_slope(z, u) + 3.0) < 0.15);
    const double r = tem_pair_energy(c, 40.0).energy / tem_pair_energy(c, 80.0).energy;
    CHECK(r == doctest::Approx(8.0).epsilon(0.1));

    CHECK(tem_shape(0.0) == doctest::Approx(kPi).epsilon(1e-9));
    CHECK(tem_shape(100.0) == doctest::Approx(casimir_shape(100.0, Zone::Far)).epsilon(1e-3));
    // F(x) - pi = A x ln x + B x near x = 0; the leading coefficient is 16 pi.
    const double x1 = 1e-6, x2 = 1e-5;
    const double f1 = tem_shape(x1) - kPi, f2 = tem_shape(x2) - kPi;
    const double lead = (f1 / x1 - f2 / x2) / (std::log(x1) - std::log(x2));
    CHECK(lead == doctest::Approx(16.0 * kPi).epsilon(1e-3));
    CHECK_THROWS_AS(tem_pair_energy(c, 0.0), std::invalid_argument);
}

TEST_CASE("nonadditivity ratios") {
    const double alpha = 2.0, a = 0.1;
    const double z = 100.0 * a;
    const double r1 = nonadditivity_ratio(alpha, z, Tem1D{a});
    const double r3 = nonadditivity_ratio(alpha, z, FreeSpace3D{});
    CHECK(r1 / r3 == doctest::Approx(1e4).epsilon(1e-14));
    CHECK(nonadditivity_ratio(alpha, a, Tem1D{a}) == doctest::Approx(nonadditivity_ratio(alpha, a, FreeSpace3D{})));
    CHECK(nonadditivity_ratio(alpha, z, Tem1D{a / 10.0}) == doctest::Approx(100.0 * r1));
    CHECK_THROWS_AS(nonadditivity_ratio(alpha, z, Tem1D{0.0}), std::invalid_argument);
}
