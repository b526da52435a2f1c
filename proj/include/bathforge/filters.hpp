// filters.hpp: spectral filter functions F_t(w) of control protocols
//
// F_t(w) = |Y_t(w)|^2 / (2 pi t),  Y_t(w) = int_0^t eps(t') exp(i w t') dt'
//
// With this normalization int F_t dw = (1/t) int_0^t |eps|^2 dt', which is 1
// for unit-modulus controls (Free, CPMG, ContinuousDrive).

#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "bathforge/table.hpp"

namespace bathforge::filters {

struct Free {};

// Ideal instantaneous pi pulses at t (2k - 1) / (2N), k = 1..N.
struct Cpmg {
    int n_pulses{1};
};

// eps(t') = exp(i rabi t'); the filter is the free one translated to -rabi.
struct ContinuousDrive {
    double rabi{0.0};
};

// eps(t') = alpha0 sin^p(pi t' / t), p in {0, 1, 2}.
struct SinP {
    int p{0};
    double alpha0{1.0};
};

struct ControlProtocol {
    using Kind = std::variant<Free, Cpmg, ContinuousDrive, SinP>;
    Kind kind{Free{}};
    double duration{1.0};

    static ControlProtocol free(double t) { return {Free{}, t}; }
    static ControlProtocol cpmg(int n, double t) { return {Cpmg{n}, t}; }
    static ControlProtocol drive(double rabi, double t) { return {ContinuousDrive{rabi}, t}; }
    static ControlProtocol sin_p(int p, double alpha0, double t) { return {SinP{p, alpha0}, t}; }

    std::string describe() const;
};

class FilterFunction {
public:
    // Throws std::invalid_argument for a nonpositive duration, N < 1,
    // p outside {0, 1, 2} or |alpha0| > 1.
    explicit FilterFunction(ControlProtocol protocol);

    const ControlProtocol& protocol() const { return protocol_; }
    double duration() const { return protocol_.duration; }

    // Closed-form F_t(w). For |w| t > 1e9 the mean tail value is returned.
    double operator()(double omega) const;

    // F_t(w) from adaptive quadrature of the defining integral.
    double numeric(double omega) const;

    // Y_t(w) from the closed form (CPMG and Free via segment sums).
    std::complex<double> amplitude(double omega) const;

    // Y_t(w) by direct quadrature of eps(t') exp(i w t').
    std::complex<double> amplitude_numeric(double omega) const;

    // Control modulation eps(t') for 0 <= t' <= t.
    std::complex<double> modulation(double t) const;

    // Average of F over one period of its fast oscillation: the smooth
    // envelope the tails decay along. Diverges at the lobe centres and is
    // only meaningful away from them.
    double envelope(double omega) const;

    // int F dw = (1/t) int |eps|^2 dt'.
    double norm() const;

    // Frequencies of the main lobes (0 for Free/SinP, +-pi N / t for CPMG,
    // -rabi for ContinuousDrive).
    std::vector<double> peaks() const;

    // Centre of mass of the main lobes, and the natural lobe width 2 pi / t.
    double center() const;
    double lobe_width() const;

    // Period (in w) of the fast oscillation of F: 2 pi / t, or 4 pi N / t for CPMG.
    double oscillation_period() const;

    // Times where eps is not smooth (pulse instants).
    std::vector<double> switching_times() const;

private:
    ControlProtocol protocol_;
};

FilterFunction build_filter(const ControlProtocol& protocol);
inline double evaluate_filter(const FilterFunction& filter, double omega) { return filter(omega); }

struct TailFit {
    double exponent{0.0};      // s in F ~ w^-s
    double rms_residual{0.0};  // of the log-log fit, natural-log units
    bool power_law{true};      // false when the residual exceeds the threshold
};

// Fits the oscillation-averaged filter over w in [50 pi / t, 5000 pi / t].
TailFit tail_exponent(const FilterFunction& filter, double residual_threshold = 0.05);

// Dense samples (w, F) on [lo, hi].
Table sample_filter(const FilterFunction& filter, double lo, double hi, std::size_t points);

} // namespace bathforge::filters
