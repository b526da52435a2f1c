// engine.hpp: two-bath periodically modulated qubit heat machine

#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "bathforge/spectra.hpp"
#include "bathforge/table.hpp"

namespace bathforge::engine {

struct PiFlip {};
struct Sinusoidal {
    double depth{1.0};  // frequency excursion over Omega; phase factor exp(-i depth sin(Omega t))
};
struct Custom {
    std::vector<double> weights;  // q = -harmonic_cut .. harmonic_cut
};
using Modulation = std::variant<PiFlip, Sinusoidal, Custom>;

struct Harmonic {
    int q{0};
    double weight{0.0};
};

// Sideband weights for q = -harmonic_cut .. harmonic_cut, normalized to sum 1.
std::vector<Harmonic> harmonic_weights(const Modulation& modulation, int harmonic_cut);

struct MachineConfig {
    double omega0{1.0};
    double Omega{0.1};
    spectra::ThermalBath hot{spectra::BathSpectrum::flat(0.0), 1.0};
    spectra::ThermalBath cold{spectra::BathSpectrum::flat(0.0), 1.0};
    Modulation modulation{PiFlip{}};
    int harmonic_cut{1};
};

enum class Regime { Engine, Refrigerator, Idle };
const char* regime_name(Regime regime);

struct MachineOperatingPoint {
    double p_excited{0.0};
    double j_hot{0.0};     // heat per unit time into the qubit from the hot bath
    double j_cold{0.0};
    double power{0.0};     // J_h + J_c, delivered to the modulation
    Regime regime{Regime::Idle};
    double efficiency_or_cop{0.0};   // P / J_h (Engine), J_c / (-P) (Refrigerator), NaN when Idle
    double entropy_production{0.0};  // -J_h / T_h - J_c / T_c
    double rate_scale{0.0};          // sum over channels of w_q (up + down)
    double balance_residual{0.0};    // |p_e sum(down) - p_g sum(up)| / sum(up + down)
};

// Idle covers |P| below this fraction of rate_scale, and also the dissipative
// case P < 0 with J_c <= 0.
inline constexpr double kIdleFraction = 1e-14;

MachineOperatingPoint steady_state(const MachineConfig& config);

// Root of n_h(w0 + W) = n_c(w0 - W) on (0, w0), by bisection; empty when the
// sign does not change (e.g. T_h <= T_c).
std::optional<double> critical_modulation(const MachineConfig& config);

struct EfficiencyCurve {
    Table table;   // Omega, regime, eta_or_cop, J_h, J_c, P, p_e, entropy_production
    std::optional<double> omega_crit;
    std::vector<MachineOperatingPoint> points;
};

EfficiencyCurve efficiency_curve(const MachineConfig& base, const std::vector<double>& omegas);

struct SeparationReport {
    double cold_at_upper{0.0};   // G^c(w0 + W)
    double hot_at_lower{0.0};    // G^h(w0 - W)
    double cold_leakage{0.0};    // cold rate / hot rate at w0 + W
    double hot_leakage{0.0};     // hot rate / cold rate at w0 - W
    bool separated{true};        // false iff either leakage >= kLeakageThreshold
};

inline constexpr double kLeakageThreshold = 0.01;

SeparationReport spectral_separation_report(const MachineConfig& config);

} // namespace bathforge::engine
