// filters.cpp: closed-form and quadrature filter functions

#include "bathforge/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bathforge/numerics/fit.hpp"
#include "bathforge/numerics/quadrature.hpp"

namespace bathforge::filters {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double sinc(double x) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

// int_0^t exp(i w t') dt'
cd free_amplitude(double w, double t) { return t * sinc(0.5 * w * t) * std::polar(1.0, 0.5 * w * t); }

std::vector<double> cpmg_boundaries(int n, double t) {
    std::vector<double> b{0.0};
    for (int k = 1; k <= n; ++k) b.push_back(t * (2.0 * k - 1.0) / (2.0 * n));
    b.push_back(t);
    return b;
}

} // namespace

std::string ControlProtocol::describe() const {
    std::ostringstream os;
    std::visit(Overloaded{
                   [&](const Free&) { os << "Free"; },
                   [&](const Cpmg& c) { os << "CPMG(N=" << c.n_pulses << ")"; },
                   [&](const ContinuousDrive& d) { os << "ContinuousDrive(rabi=" << d.rabi << ")"; },
                   [&](const SinP& s) { os << "SinP(p=" << s.p << ", alpha0=" << s.alpha0 << ")"; },
               },
               kind);
    os << " over t=" << duration;
    return os.str();
}

FilterFunction::FilterFunction(ControlProtocol protocol) : protocol_(std::move(protocol)) {
    if (!(protocol_.duration > 0.0) || !std::isfinite(protocol_.duration))
        throw std::invalid_argument("filter: duration must be positive and finite");
    std::visit(Overloaded{
                   [](const Free&) {},
                   [](const Cpmg& c) {
                       if (c.n_pulses < 1) throw std::invalid_argument("filter: CPMG needs n_pulses >= 1");
                   },
                   [](const ContinuousDrive& d) {
                       if (!std::isfinite(d.rabi)) throw std::invalid_argument("filter: rabi must be finite");
                   },
                   [](const SinP& s) {
                       if (s.p < 0 || s.p > 2) throw std::invalid_argument("filter: SinP needs p in {0, 1, 2}");
                       if (!(std::abs(s.alpha0) <= 1.0))
                           throw std::invalid_argument("filter: SinP needs |alpha0| <= 1");
                   },
               },
               protocol_.kind);
}

std::complex<double> FilterFunction::modulation(double tp) const {
    const double t = duration();
    return std::visit(Overloaded{
                          [](const Free&) { return cd(1.0); },
                          [&](const Cpmg& c) {
                              // Pulse k sits at x = 2k - 1 in units of t / (2N).
                              const double x = tp * 2.0 * c.n_pulses / t;
                              const int flips = static_cast<int>(std::floor(0.5 * (x + 1.0)));
                              const int k = std::clamp(flips, 0, c.n_pulses);
                              return cd(k % 2 == 0 ? 1.0 : -1.0);
                          },
                          [&](const ContinuousDrive& d) { return std::polar(1.0, d.rabi * tp); },
                          [&](const SinP& s) {
                              return cd(s.alpha0 * std::pow(std::sin(kPi * tp / t), s.p));
                          },
                      },
                      protocol_.kind);
}

std::complex<double> FilterFunction::amplitude(double w) const {
    const double t = duration();
    return std::visit(
        Overloaded{
            [&](const Free&) { return free_amplitude(w, t); },
            [&](const Cpmg& c) {
                // End segments have length t/(2N), the N-1 inner ones t/N with
                // midpoints j t/N, so their phases form a geometric sequence.
                const int n = c.n_pulses;
                const double edge = t / (2.0 * n);
                const double inner = t / n;
                const double end_sign = (n % 2 == 0) ? 1.0 : -1.0;
                cd sum = edge * sinc(0.5 * w * edge) *
                         (std::polar(1.0, 0.5 * w * edge) + end_sign * std::polar(1.0, w * (t - 0.5 * edge)));
                if (n > 1) {
                    const cd step = -std::polar(1.0, w * inner);
                    cd z = step;
                    cd acc = 0.0;
                    for (int j = 1; j < n; ++j) {
                        acc += z;
                        z *= step;
                    }
                    sum += inner * sinc(0.5 * w * inner) * acc;
                }
                return sum;
            },
            [&](const ContinuousDrive& d) { return free_amplitude(w + d.rabi, t); },
            [&](const SinP& s) -> cd {
                const double aw = std::abs(w);
                const cd phase = std::polar(1.0, 0.5 * w * t);
                if (s.p == 0) return s.alpha0 * free_amplitude(w, t);
                if (s.p == 1) {
                    const double a = kPi / t;
                    return s.alpha0 * a * t * sinc(0.5 * (aw - a) * t) / (aw + a) * phase;
                }
                const double c = 2.0 * kPi / t;
                if (aw < 0.5 * c)
                    return s.alpha0 * 0.5 * t * sinc(0.5 * w * t) * c * c / ((c - aw) * (c + aw)) * phase;
                return s.alpha0 * c * c * 0.5 * t * sinc(0.5 * (aw - c) * t) / (aw * (aw + c)) * phase;
            },
        },
        protocol_.kind);
}

std::vector<double> FilterFunction::switching_times() const {
    if (const auto* c = std::get_if<Cpmg>(&protocol_.kind)) {
        auto b = cpmg_boundaries(c->n_pulses, duration());
        return {b.begin() + 1, b.end() - 1};
    }
    return {};
}

std::complex<double> FilterFunction::amplitude_numeric(double w) const {
    const double t = duration();
    double fastest = std::abs(w);
    if (const auto* d = std::get_if<ContinuousDrive>(&protocol_.kind)) fastest = std::abs(w + d->rabi);
    if (const auto* s = std::get_if<SinP>(&protocol_.kind)) fastest += 2.0 * kPi * s->p / t;
    const double h = fastest > 0.0 ? std::min(t, kPi / fastest) : t;
    auto pts = numerics::uniform_breakpoints(0.0, t, h, 200000);
    const auto sw = switching_times();
    pts = numerics::merge_breakpoints(std::move(pts), sw);

    numerics::QuadratureOptions opts;
    opts.rel_tol = 1e-13;
    opts.abs_tol = 1e-13 * t;
    const auto re = numerics::integrate([&](double x) { return (modulation(x) * std::polar(1.0, w * x)).real(); },
                                        pts, opts);
    const auto im = numerics::integrate([&](double x) { return (modulation(x) * std::polar(1.0, w * x)).imag(); },
                                        pts, opts);
    numerics::require_converged(re, "filter amplitude (real part)");
    numerics::require_converged(im, "filter amplitude (imaginary part)");
    return {re.value, im.value};
}

double FilterFunction::operator()(double w) const {
    const double t = duration();
    if (std::abs(w) * t > 1e9) return envelope(w);
    return std::norm(amplitude(w)) / (2.0 * kPi * t);
}

double FilterFunction::numeric(double w) const {
    return std::norm(amplitude_numeric(w)) / (2.0 * kPi * duration());
}

double FilterFunction::envelope(double w) const {
    const double t = duration();
    const double mean_sq = std::visit(
        Overloaded{
            [&](const Free&) { return 2.0 / (w * w); },
            [&](const Cpmg& c) { return (4.0 * c.n_pulses + 2.0) / (w * w); },
            [&](const ContinuousDrive& d) { return 2.0 / ((w + d.rabi) * (w + d.rabi)); },
            [&](const SinP& s) {
                const double a2 = s.alpha0 * s.alpha0;
                if (s.p == 0) return 2.0 * a2 / (w * w);
                if (s.p == 1) {
                    const double a = kPi / t;
                    const double d = a * a - w * w;
                    return 2.0 * a2 * a * a / (d * d);
                }
                const double c = 2.0 * kPi / t;
                const double d = c * c - w * w;
                return 0.5 * a2 * c * c * c * c / (w * w * d * d);
            },
        },
        protocol_.kind);
    return mean_sq / (2.0 * kPi * t);
}

double FilterFunction::norm() const {
    if (const auto* s = std::get_if<SinP>(&protocol_.kind)) {
        const double a2 = s->alpha0 * s->alpha0;
        constexpr double mean_sin_power[] = {1.0, 0.5, 0.375};
        return a2 * mean_sin_power[s->p];
    }
    return 1.0;
}

std::vector<double> FilterFunction::peaks() const {
    const double t = duration();
    return std::visit(Overloaded{
                          [](const Free&) { return std::vector<double>{0.0}; },
                          [&](const Cpmg& c) {
                              const double w = kPi * c.n_pulses / t;
                              return std::vector<double>{-w, w};
                          },
                          [](const ContinuousDrive& d) { return std::vector<double>{-d.rabi}; },
                          [](const SinP&) { return std::vector<double>{0.0}; },
                      },
                      protocol_.kind);
}

double FilterFunction::center() const {
    const auto p = peaks();
    double s = 0.0;
    for (double x : p) s += x;
    return s / static_cast<double>(p.size());
}

double FilterFunction::lobe_width() const { return 2.0 * kPi / duration(); }

double FilterFunction::oscillation_period() const {
    if (const auto* c = std::get_if<Cpmg>(&protocol_.kind)) return 4.0 * kPi * c->n_pulses / duration();
    return 2.0 * kPi / duration();
}

FilterFunction build_filter(const ControlProtocol& protocol) { return FilterFunction(protocol); }

TailFit tail_exponent(const FilterFunction& filter, double residual_threshold) {
    const double t = filter.duration();
    const double w_lo = 50.0 * kPi / t;
    const double w_hi = 100.0 * w_lo;
    const double period = filter.oscillation_period();
    constexpr int kSamples = 40;

    std::vector<double> ws, fs;
    numerics::QuadratureOptions opts;
    opts.rel_tol = 1e-9;
    for (int i = 0; i < kSamples; ++i) {
        const double w = w_lo * std::pow(w_hi / w_lo, static_cast<double>(i) / (kSamples - 1));
        const auto r = numerics::integrate([&](double x) { return filter(x); }, w - 0.5 * period,
                                           w + 0.5 * period, opts, 8);
        numerics::require_converged(r, "tail_exponent window average");
        ws.push_back(w);
        fs.push_back(r.value / period);
    }
    for (double f : fs)
        if (!(f > 0.0)) return {0.0, std::numeric_limits<double>::infinity(), false};
    const auto fit = numerics::fit_power_law(ws, fs);
    TailFit out;
    out.exponent = -fit.slope;
    out.rms_residual = fit.rms_residual;
    out.power_law = fit.rms_residual <= residual_threshold;
    return out;
}

Table sample_filter(const FilterFunction& filter, double lo, double hi, std::size_t points) {
    if (points < 2 || !(hi > lo)) throw std::invalid_argument("sample_filter: need points >= 2 and hi > lo");
    Table table;
    table.columns = {"omega[rad/s]", "F[s]"};
    for (std::size_t i = 0; i < points; ++i) {
        const double w = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
        table.add_row({w, filter(w)});
    }
    return table;
}

} // namespace bathforge::filters
