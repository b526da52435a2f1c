// spectra.hpp: bath coupling spectra G(w), thermal occupancies and the
// KMS-dressed spectra G_T(w) shared by every other module.
//
// Units: hbar = k_B = 1. Frequencies and temperatures share one unit.

#pragma once

#include <iosfwd>
#include <limits>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bathforge/numerics/monotone_cubic.hpp"

namespace bathforge::spectra {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// g^2 tau_c / (pi (1 + w^2 tau_c^2)). A nonzero mode_offset splits the line
// into a symmetric pair centred at +-mode_offset with the same total weight.
struct Lorentzian {
    double g{1.0};
    double tau_c{1.0};
    double mode_offset{0.0};
};

// eta * w * exp(-w / omega_cut) for w >= 0, zero below.
struct Ohmic {
    double eta{1.0};
    double omega_cut{1.0};
};

// amplitude * w^3 on [omega_min, omega_max], zero elsewhere.
struct Blackbody {
    double amplitude{1.0};
    double omega_min{0.0};
    double omega_max{kInf};
};

// One-dimensional photonic band above the edge omega_co:
// gamma_fs / sqrt(w / omega_co - 1) for w > omega_co, zero inside the gap.
struct BandGap1D {
    double omega_co{1.0};
    double gamma_fs{1.0};
};

// White spectrum G = level on the whole real line.
struct Flat {
    double level{0.0};
};

// Samples (w_i, G_i) joined by a monotone cubic. No extrapolation.
struct Tabulated {
    std::shared_ptr<const numerics::MonotoneCubic> curve;
};

enum class Kind { Lorentzian, Ohmic, Blackbody, BandGap1D, Flat, Tabulated };

struct Support {
    double lo{-kInf};
    double hi{kInf};
    bool contains(double w) const { return w >= lo && w <= hi; }
};

class BathSpectrum {
public:
    using Model = std::variant<Lorentzian, Ohmic, Blackbody, BandGap1D, Flat, Tabulated>;

    // Validates parameters; throws std::invalid_argument on bad input.
    explicit BathSpectrum(Model model);

    static BathSpectrum lorentzian(double g, double tau_c, double mode_offset = 0.0);
    static BathSpectrum ohmic(double eta, double omega_cut);
    static BathSpectrum blackbody(double amplitude, double omega_min = 0.0, double omega_max = kInf);
    static BathSpectrum band_gap(double omega_co, double gamma_fs);
    static BathSpectrum flat(double level);
    static BathSpectrum tabulated(std::vector<double> omega, std::vector<double> value);

    Kind kind() const;
    const Model& model() const { return model_; }

    // G(w). Throws DomainError for Tabulated queries outside the table and
    // at the divergent BandGap1D edge.
    double operator()(double omega) const;

    // Interval outside which G vanishes (or is undefined, for Tabulated).
    Support support() const;

    // G evaluated inside the support, zero outside it. Callers that treat
    // frequencies without bath modes as carrying no weight use this.
    double value_or_zero(double omega) const;

    // Frequencies where G or its derivatives change character; used as
    // quadrature breakpoints.
    std::vector<double> features() const;

    // Characteristic frequency width, used to scale infinite-range maps.
    double scale() const;

    // Limit of G(w) as w -> 0+ and of its slope, used for thermal dressing
    // and infrared-divergence checks.
    double value_at_zero() const;
    double slope_at_zero() const;

    std::string describe() const;

private:
    Model model_;
};

// Two-column (w, G) text with '#' comment lines.
BathSpectrum load_tabulated(std::istream& in);
BathSpectrum load_tabulated(const std::string& path);

inline double evaluate(const BathSpectrum& spectrum, double omega) { return spectrum(omega); }

// Bose-Einstein occupancy 1 / (exp(w / T) - 1); zero at T = 0.
double occupancy(double omega, double temperature);

struct ThermalBath {
    BathSpectrum spectrum;
    double temperature{0.0};
};

// KMS-dressed spectrum:
//   w > 0: (n(w) + 1) G(w)      (emission into the bath)
//   w < 0: n(|w|) G(|w|)        (absorption from the bath)
//   w = 0: G(0+) at T = 0; T * G'(0+) at T > 0, which requires G(0+) = 0.
double thermal_spectrum(const ThermalBath& bath, double omega);

} // namespace bathforge::spectra
