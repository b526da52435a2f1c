// kk.hpp: the filter/spectrum overlap R = int F_t(w) G(w) dw and the
// quantities built on it (coherence decay, spectrum inversion,
// measurement-interval rates).

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bathforge/filters.hpp"
#include "bathforge/spectra.hpp"

namespace bathforge::kk {

// A real-line spectral density prepared for overlap integrals: either a raw
// G(w) or a KMS-dressed G_T(w). `value` returns 0 outside `support`.
struct SpectralDensity {
    std::function<double(double)> value;
    spectra::Support support;
    std::vector<double> features;
    double scale{1.0};
    std::string label;
};

SpectralDensity density(const spectra::BathSpectrum& spectrum);

// Throws DomainError when G_T is not integrable at w = 0 (G(0+) > 0 at T > 0).
SpectralDensity density(const spectra::ThermalBath& bath);

struct OverlapOptions {
    double rel_tol{1e-10};
    double core_lobes{500.0};   // half-width of the oscillation-resolved core, in units of 2 pi / t
    std::size_t max_panels{200000};
};

struct OverlapResult {
    double value{0.0};
    double error{0.0};
    bool converged{true};
    double worst_lo{0.0};   // panel with the largest error estimate
    double worst_hi{0.0};
};

// Raw overlap with diagnostics; never throws on non-convergence.
OverlapResult overlap(const filters::FilterFunction& filter, const SpectralDensity& g,
                      const OverlapOptions& opts = {});

// R = int F G dw. Throws NumericError (interval, residual) when quadrature fails.
double decoherence_rate(const filters::FilterFunction& filter, const SpectralDensity& g,
                        const OverlapOptions& opts = {});
double decoherence_rate(const filters::FilterFunction& filter, const spectra::BathSpectrum& spectrum,
                        const OverlapOptions& opts = {});
double decoherence_rate(const filters::FilterFunction& filter, const spectra::ThermalBath& bath,
                        const OverlapOptions& opts = {});

struct QubitProbeState {
    double theta{0.7853981633974483};
    double phi{0.0};

    // <sigma_x(0)> = sin(2 theta) cos(phi). Throws std::invalid_argument
    // outside theta in [0, pi/2], phi in [0, 2 pi).
    double sigma_x0() const;
};

struct DecoherenceRecord {
    double t{0.0};
    double rate{0.0};
    double exponent{0.0};  // R t
    double coherence{0.0};
    double p_plus{0.5};
    double p_minus{0.5};
};

DecoherenceRecord coherence_decay(const QubitProbeState& probe, double rate, double t);

struct Measurement {
    filters::FilterFunction filter;
    double rate{0.0};
};

struct InferenceResult {
    std::vector<double> omega;
    std::vector<double> g;
    double residual_norm{0.0};   // || A g - R ||_2 over the measurements
    bool converged{true};

    spectra::BathSpectrum as_spectrum() const;
};

// Nonnegative ridge inversion of R_i = int F_i(w) G(w) dw with G expanded in
// piecewise-linear hat functions on `grid`. The Tikhonov term is
// regularization * ||A||_2^2 * ||g||^2, so the weight is dimensionless.
InferenceResult infer_spectrum(const std::vector<Measurement>& measurements,
                               const std::vector<double>& grid, double regularization);

struct ZenoRates {
    double r_up{0.0};
    double r_down{0.0};
    double t_eff{0.0};   // +inf when r_up == r_down
};

// Rates of a two-level system (gap omega0) interrupted by energy
// measurements every tau: the free filter of duration tau shifted to the
// transition frequencies.
ZenoRates measurement_thermodynamics(const spectra::ThermalBath& bath, double omega0, double tau,
                                     const OverlapOptions& opts = {});

} // namespace bathforge::kk
