// waveguide.hpp: band-edge resonant dipole-dipole interaction (RDDI),
// two-atom exchange dynamics, and TEM-waveguide Casimir/van der Waals shapes.
//
// All proportionality constants of the scaling laws are set to 1 and c = 1.

#pragma once

#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "bathforge/spectra.hpp"
#include "bathforge/table.hpp"

namespace bathforge::waveguide {

struct BandEdgeConfig {
    double omega_a{0.5};    // atomic transition, inside the gap
    double omega_co{1.0};   // band edge
    double gamma_fs{1.0};   // free-space decay rate
    double lambda_a{1.0};   // resonant wavelength
};

struct Rddi {
    double delta{0.0};  // Gamma_fs / sqrt(1 - w_a / w_co)
    double xi{0.0};     // lambda_a / sqrt(1 - w_a / w_co)
};

// Throws DomainError for omega_a >= omega_co.
Rddi rddi_strength_range(const BandEdgeConfig& config);

// int G(w) / (w - omega_a) dw for a spectrum supported strictly above
// omega_a: the virtual-exchange strength seen by an atom detuned into the
// gap. For BandGap1D it equals pi gamma_fs / sqrt(1 - omega_a / omega_co).
double gap_exchange_integral(const spectra::BathSpectrum& spectrum, double omega_a);

struct TwoAtomSample {
    double t{0.0};
    double p1{0.0};           // atom 1 excited
    double p2{0.0};           // atom 2 excited
    double p_ground{0.0};     // both atoms in the ground state
    double concurrence{0.0};
};

// Excitation starts on atom 1; exchange at rate delta under
// H = delta (s1+ s2- + s2+ s1-), each atom decaying at gamma_fs.
std::vector<TwoAtomSample> two_atom_dynamics(double delta, double gamma_fs, const std::vector<double>& t_grid);

Table two_atom_table(const std::vector<TwoAtomSample>& samples);

// Wootters concurrence of a two-qubit density matrix in the basis
// |ee>, |eg>, |ge>, |gg>.
double concurrence(const Eigen::Matrix4cd& rho);

// Closed form for X-shaped states (nonzero entries only on the diagonal and
// anti-diagonal): 2 max(0, |r_23| - sqrt(r_11 r_44), |r_14| - sqrt(r_22 r_33)).
double x_state_concurrence(const Eigen::Matrix4cd& rho);

// Full two-atom density matrix at time t (same basis as concurrence()).
Eigen::Matrix4cd two_atom_state(double delta, double gamma_fs, double t);

// Parameters reproducing the band-edge exchange example: Gamma_fs =
// 2 pi 5.75 MHz with the first complete exchange at 1.8 ns.
struct ExchangePreset {
    double delta;
    double gamma_fs;
    double exchange_time;
};
ExchangePreset rubidium_band_edge_preset();

enum class Zone { Near, Far };

// Near zone (z/lambda_e < 0.1): pi + 16 pi x ln x.
// Far zone (z/lambda_e > 10):   (2 pi)^-3 x^-3.
// Queries outside the window throw DomainError naming it.
double casimir_shape(double z_over_lambda, Zone zone);

struct TemLineConfig {
    double lambda_e{1.0};   // dipole-transition wavelength
    double a{0.01};         // transverse dimension
    double alpha0{1.0};     // static polarizability
};

struct TemPairEnergy {
    double energy{0.0};           // regulator-extrapolated U_12(z)
    double regulator_shift{0.0};  // U(2 k_max) - U(k_max), a convergence diagnostic
    bool tem_dominant{false};     // z > 10 a: the TEM mode dominates
};

// U_12(z) = -(alpha0^2 / a^2) int_0^inf dxi xi^2 a(i xi)^2 exp(-2 xi z) exp(-xi / k_max),
// a(i xi) = 1 / (1 + xi^2 / w_e^2), w_e = 2 pi / lambda_e, evaluated on the
// imaginary frequency axis and Richardson-extrapolated over k_max and 2 k_max
// with k_max = 1e3 / lambda_e. In units of alpha0^2 w_e^3 / (4 a^2) this is
// -F(z / lambda_e), F(x) = 4 int_0^inf s^2 exp(-4 pi x s) / (1 + s^2)^2 ds.
TemPairEnergy tem_pair_energy(const TemLineConfig& config, double z);

// Dimensionless shape F(x) by direct quadrature (no regulator).
double tem_shape(double z_over_lambda);

struct FreeSpace3D {};
struct Tem1D {
    double a{1.0};
};
using Geometry = std::variant<FreeSpace3D, Tem1D>;

// Three-body to two-body ratio: alpha / z^3 (3d) or alpha / (a^2 z) (1d).
double nonadditivity_ratio(double alpha0, double z, const Geometry& geometry);

} // namespace bathforge::waveguide
