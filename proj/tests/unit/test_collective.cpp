// test_collective.cpp: collective dephasing in the symmetric subspace

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "bathforge/collective.hpp"
#include "bathforge/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bathforge;
using collective::DickeState;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

} // namespace

TEST_CASE("symmetric-subspace evolution matches a full 2^N brute-force propagation") {
    for (int n = 1; n <= 8; ++n) {
        const double theta = 0.3 + 0.2 * n, phi = 0.7 * n;
        const Eigen::VectorXcd psi = oracle::product_state(n, theta, phi);
        const Eigen::MatrixXcd full = psi * psi.adjoint();
        const double w0 = 1.3, t = 0.8, f_rate = 0.37, g_rate = 0.05;
        const auto kernel = collective::markovian_kernel(f_rate, g_rate);

        const Eigen::MatrixXcd expect0 = oracle::project_dicke(full, n);
        CHECK((DickeState::coherent(n, theta, phi).rho() - expect0).cwiseAbs().maxCoeff() < 1e-12);

        const Eigen::MatrixXcd expect = oracle::project_dicke(oracle::brute_evolve(full, n, w0, f_rate * t, g_rate * t, t), n);
        const auto got = collective::evolve(DickeState::coherent(n, theta, phi), kernel, w0, t);
        CHECK((got.rho() - expect).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("one-axis twisting produces an equatorial cat at f t = pi/8") {
    const auto kernel = collective::markovian_kernel(1.0, 0.0);
    for (int n = 2; n <= 10; ++n) {
        const auto s = collective::evolve(DickeState::coherent(n, kPi / 2.0, 0.0), kernel, 0.0, kPi / 8.0);
        CHECK(collective::best_equatorial_cat_fidelity(s).fidelity >= 1.0 - 1e-9);
    }
    // An ideal GHZ along z is recognised as such.
    CHECK(collective::ghz_fidelity(DickeState::ghz(5, 0.4)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(collective::cat_fidelity(DickeState::ghz(5), 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cat fidelity strictly decreases with collective dephasing") {
    for (int n : {3, 6}) {
        double prev = 2.0;
        for (double g : {0.0, 0.01, 0.05, 0.2, 1.0}) {
            const auto s = collective::evolve(DickeState::coherent(n, kPi / 2.0, 0.0),
                                              collective::markovian_kernel(1.0, g), 0.0, kPi / 8.0);
            const double fid = collective::best_equatorial_cat_fidelity(s).fidelity;
            CHECK(fid < prev);
            prev = fid;
        }
    }
}

TEST_CASE("Ohmic zero-temperature kernel has closed forms") {
    const double eta = 0.2, wc = 3.0;
    const auto k = collective::dephasing_kernel({spectra::BathSpectrum::ohmic(eta, wc), 0.0});
    for (double t : {0.1, 1.0, 5.0}) {
        CHECK(k.decoherence_exponent(t) == doctest::Approx(0.5 * eta * std::log1p(wc * wc * t * t)).epsilon(1e-8));
        CHECK(k.lamb_phase(t) == doctest::Approx(eta * (t * wc - std::atan(wc * t))).epsilon(1e-8));
    }
    const auto ks = collective::dephasing_kernel({spectra::BathSpectrum::ohmic(eta, wc), 0.0}, 0.25);
    CHECK(ks.decoherence_exponent(1.0) == doctest::Approx(0.25 * k.decoherence_exponent(1.0)));
    CHECK(k.decoherence_exponent(0.0) == 0.0);
}

TEST_CASE("dephasing kernel rejects infrared-divergent baths") {
    const spectra::ThermalBath flat{spectra::BathSpectrum::flat(1.0), 1.0};
    CHECK_THROWS_AS(collective::dephasing_kernel(flat), DomainError);
    const spectra::ThermalBath ohmic{spectra::BathSpectrum::ohmic(0.1, 1.0), 1.0};
    CHECK_THROWS_AS(collective::dephasing_kernel(ohmic, 1.5), std::invalid_argument);
}

TEST_CASE("Lamb-to-dephasing dominance grows as omega_c / (2 pi T)") {
    const double eta = 0.1, wc = 2.0;
    for (double T : {0.1, 1.0, 10.0}) {
        const auto d = collective::dominance_ratio({spectra::BathSpectrum::ohmic(eta, wc), T});
        CHECK(d.f_ab == doctest::Approx(eta * wc).epsilon(1e-7));
        CHECK(d.gamma == doctest::Approx(2.0 * kPi * eta * T).epsilon(1e-12));
        CHECK(d.ratio == doctest::Approx(wc / (2.0 * kPi * T)).epsilon(1e-7));
    }
    const auto z = collective::dominance_ratio({spectra::BathSpectrum::ohmic(eta, wc), 0.0});
    CHECK(z.infinite);
    CHECK(collective::lamb_shift_rate(spectra::BathSpectrum::lorentzian(1.0, 1.0)) ==
          doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("evolution preserves trace, hermiticity and positivity") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(u(rng) * collective::kMaxQubits);
        Eigen::VectorXcd a(n + 1);
        for (int k = 0; k <= n; ++k) a(k) = cd(u(rng) - 0.5, u(rng) - 0.5);
        const auto s = DickeState::from_pure(n, a);
        const auto kernel = collective::markovian_kernel(4.0 * u(rng) - 2.0, u(rng));
        const auto e = collective::evolve(s, kernel, 3.0 * u(rng), 2.0 * u(rng));
        CHECK(e.trace() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(e.hermiticity_defect() < 1e-13);
        CHECK(e.min_eigenvalue() > -1e-12);
    }
}

TEST_CASE("invalid collective inputs") {
    CHECK_THROWS_AS(DickeState::all_up(0), std::invalid_argument);
    CHECK_THROWS_AS(DickeState::all_up(15), std::invalid_argument);
    CHECK_THROWS_AS(collective::ghz_fidelity(DickeState::all_up(1)), std::invalid_argument);
    CHECK_THROWS_AS(collective::markovian_kernel(1.0, -0.1), std::invalid_argument);
    const Eigen::MatrixXcd wrong = Eigen::MatrixXcd::Identity(3, 3);
    CHECK_THROWS_AS(DickeState(4, wrong), std::invalid_argument);
}
