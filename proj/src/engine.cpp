// engine.cpp: Floquet sideband rates, steady state and machine diagnostics

#include "bathforge/engine.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bathforge/errors.hpp"

namespace bathforge::engine {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Total (up + down) rate factor G_T(w) + G_T(-w) per unit sideband weight.
double channel_rate(const spectra::ThermalBath& bath, double omega) {
    const double w = std::abs(omega);
    if (w == 0.0) return 2.0 * spectra::thermal_spectrum(bath, 0.0);
    return bath.spectrum.value_or_zero(w) * (2.0 * spectra::occupancy(w, bath.temperature) + 1.0);
}

struct Channel {
    int bath{0};        // 0 hot, 1 cold
    double omega{0.0};  // w0 + q W
    double up{0.0};     // rate g -> e
    double down{0.0};   // rate e -> g
};

void validate(const MachineConfig& c) {
    if (!(c.omega0 > 0.0) || !std::isfinite(c.omega0))
        throw std::invalid_argument("steady_state: omega0 must be positive");
    if (!(c.Omega > 0.0) || !(c.Omega < c.omega0))
        throw std::invalid_argument("steady_state: need 0 < Omega < omega0");
    if (!(c.hot.temperature > 0.0) || !(c.cold.temperature > 0.0))
        throw std::invalid_argument("steady_state: bath temperatures must be positive");
}

std::vector<Channel> build_channels(const MachineConfig& c) {
    const auto weights = harmonic_weights(c.modulation, c.harmonic_cut);
    std::vector<Channel> out;
    const spectra::ThermalBath* baths[2] = {&c.hot, &c.cold};
    for (int b = 0; b < 2; ++b) {
        const auto& bath = *baths[b];
        for (const auto& h : weights) {
            if (h.weight == 0.0) continue;
            const double w = c.omega0 + h.q * c.Omega;
            Channel ch{b, w, 0.0, 0.0};
            if (w == 0.0) {
                const double r = h.weight * spectra::thermal_spectrum(bath, 0.0);
                ch.up = ch.down = r;
            } else {
                const double g = bath.spectrum.value_or_zero(std::abs(w));
                const double n = spectra::occupancy(std::abs(w), bath.temperature);
                const double emit = h.weight * g * (n + 1.0);
                const double absorb = h.weight * g * n;
                ch.down = w > 0.0 ? emit : absorb;
                ch.up = w > 0.0 ? absorb : emit;
            }
            if (ch.up != 0.0 || ch.down != 0.0) out.push_back(ch);
        }
    }
    return out;
}

} // namespace

const char* regime_name(Regime regime) {
    switch (regime) {
    case Regime::Engine: return "Engine";
    case Regime::Refrigerator: return "Refrigerator";
    case Regime::Idle: return "Idle";
    }
    return "Idle";
}

std::vector<Harmonic> harmonic_weights(const Modulation& modulation, int harmonic_cut) {
    if (harmonic_cut < 1) throw std::invalid_argument("harmonic_weights: harmonic_cut must be >= 1");
    std::vector<Harmonic> out;
    for (int q = -harmonic_cut; q <= harmonic_cut; ++q) out.push_back({q, 0.0});
    if (std::holds_alternative<PiFlip>(modulation)) {
        for (auto& h : out) {
            if (h.q % 2 != 0) {
                const double c = 2.0 / (std::numbers::pi * h.q);
                h.weight = c * c;
            }
        }
    } else if (const auto* s = std::get_if<Sinusoidal>(&modulation)) {
        if (!std::isfinite(s->depth)) throw std::invalid_argument("harmonic_weights: depth must be finite");
        for (auto& h : out) {
            const double j = std::cyl_bessel_j(static_cast<double>(std::abs(h.q)), std::abs(s->depth));
            h.weight = j * j;
        }
    } else {
        const auto& w = std::get<Custom>(modulation).weights;
        if (w.size() != out.size())
            throw std::invalid_argument("harmonic_weights: custom weights need 2 * harmonic_cut + 1 entries");
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (!(w[i] >= 0.0) || !std::isfinite(w[i]))
                throw std::invalid_argument("harmonic_weights: custom weights must be finite and >= 0");
            out[i].weight = w[i];
        }
    }
    double total = 0.0;
    for (const auto& h : out) total += h.weight;
    if (!(total > 0.0)) throw std::invalid_argument("harmonic_weights: all weights vanish");
    for (auto& h : out) h.weight /= total;
    return out;
}

MachineOperatingPoint steady_state(const MachineConfig& config) {
    validate(config);
    const auto channels = build_channels(config);
    double sum_up = 0.0, sum_down = 0.0, scale = 0.0;
    for (const auto& ch : channels) {
        sum_up += ch.up;
        sum_down += ch.down;
        scale += std::abs(ch.omega) * (ch.up + ch.down);
    }
    const double total = sum_up + sum_down;
    if (!(total > 0.0)) throw DomainError("steady_state: all rate channels vanish, no steady state defined");

    MachineOperatingPoint op;
    op.p_excited = sum_up / total;
    const double p_ground = sum_down / total;
    op.rate_scale = scale;
    op.balance_residual = std::abs(op.p_excited * sum_down - p_ground * sum_up) / total;

    // Net upward flux of channel k is sum_l (up_k down_l - down_k up_l) / total;
    // the pairwise form is exactly antisymmetric, so the currents balance
    // without cancelling large gain and loss terms.
    double j[2] = {0.0, 0.0};
    for (const auto& k : channels) {
        double flux = 0.0;
        for (const auto& l : channels) {
            if (&k == &l) continue;
            flux += k.up * l.down - k.down * l.up;
        }
        j[k.bath] += k.omega * flux / total;
    }
    op.j_hot = j[0];
    op.j_cold = j[1];
    op.power = op.j_hot + op.j_cold;
    op.entropy_production = -op.j_hot / config.hot.temperature - op.j_cold / config.cold.temperature;

    const double tol = kIdleFraction * scale;
    if (op.power > tol) {
        op.regime = Regime::Engine;
        op.efficiency_or_cop = op.power / op.j_hot;
    } else if (op.j_cold > 0.0 && op.power < -tol) {
        op.regime = Regime::Refrigerator;
        op.efficiency_or_cop = op.j_cold / -op.power;
    } else {
        op.regime = Regime::Idle;
        op.efficiency_or_cop = kNaN;
    }
    return op;
}

std::optional<double> critical_modulation(const MachineConfig& config) {
    const double w0 = config.omega0;
    const double th = config.hot.temperature;
    const double tc = config.cold.temperature;
    if (!(w0 > 0.0) || !(th > 0.0) || !(tc > 0.0))
        throw std::invalid_argument("critical_modulation: need omega0 > 0 and positive temperatures");
    const auto sign = [&](double W) {
        const double d = spectra::occupancy(w0 + W, th) - spectra::occupancy(w0 - W, tc);
        return d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    };
    double lo = w0 * 1e-15, hi = w0 * (1.0 - 1e-15);
    const int s_lo = sign(lo);
    if (s_lo == 0) return lo;
    if (s_lo == sign(hi)) return std::nullopt;
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const int s = sign(mid);
        if (s == 0) return mid;
        if (s == s_lo) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

EfficiencyCurve efficiency_curve(const MachineConfig& base, const std::vector<double>& omegas) {
    EfficiencyCurve out;
    out.table.columns = {"Omega[rad/s]", "regime", "eta_or_cop[1]", "J_h[1/s^2]", "J_c[1/s^2]",
                         "P[1/s^2]", "p_e[1]", "entropy_production[1/s]"};
    for (double W : omegas) {
        if (!(W > 0.0) || !(W < base.omega0))
            throw std::invalid_argument("efficiency_curve: Omega grid must lie in (0, omega0)");
        MachineConfig c = base;
        c.Omega = W;
        const auto op = steady_state(c);
        out.points.push_back(op);
        out.table.add_row({W, std::string(regime_name(op.regime)), op.efficiency_or_cop, op.j_hot, op.j_cold,
                           op.power, op.p_excited, op.entropy_production});
    }
    out.omega_crit = critical_modulation(base);
    return out;
}

SeparationReport spectral_separation_report(const MachineConfig& config) {
    validate(config);
    const double upper = config.omega0 + config.Omega;
    const double lower = config.omega0 - config.Omega;
    SeparationReport r;
    r.cold_at_upper = config.cold.spectrum.value_or_zero(upper);
    r.hot_at_lower = config.hot.spectrum.value_or_zero(lower);
    const auto ratio = [](double leak, double main) {
        if (leak == 0.0) return 0.0;
        if (main == 0.0) return std::numeric_limits<double>::infinity();
        return leak / main;
    };
    r.cold_leakage = ratio(channel_rate(config.cold, upper), channel_rate(config.hot, upper));
    r.hot_leakage = ratio(channel_rate(config.hot, lower), channel_rate(config.cold, lower));
    r.separated = !(r.cold_leakage >= kLeakageThreshold || r.hot_leakage >= kLeakageThreshold);
    return r;
}

} // namespace bathforge::engine
