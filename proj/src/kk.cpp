// kk.cpp: overlap integrals and derived quantities

#include "bathforge/kk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "bathforge/errors.hpp"
#include "bathforge/numerics/nnls.hpp"
#include "bathforge/numerics/quadrature.hpp"

namespace bathforge::kk {

namespace {

constexpr double kPi = std::numbers::pi;

double align_up(double x, double origin, double period) {
    return origin + period * std::ceil((x - origin) / period);
}
double align_down(double x, double origin, double period) {
    return origin + period * std::floor((x - origin) / period);
}

} // namespace

SpectralDensity density(const spectra::BathSpectrum& spectrum) {
    SpectralDensity d;
    d.value = [spectrum](double w) { return spectrum.value_or_zero(w); };
    d.support = spectrum.support();
    d.features = spectrum.features();
    d.scale = spectrum.scale();
    d.label = spectrum.describe();
    return d;
}

SpectralDensity density(const spectra::ThermalBath& bath) {
    const double T = bath.temperature;
    if (!(T >= 0.0)) throw std::invalid_argument("density: temperature must be >= 0");
    const spectra::BathSpectrum& g = bath.spectrum;
    const spectra::Support sup = g.support();
    const double plo = std::max(sup.lo, 0.0);
    const double phi = sup.hi;
    const bool covers_zero = plo == 0.0 && phi >= 0.0;
    if (T > 0.0 && covers_zero && g.value_at_zero() > 0.0)
        throw DomainError("density: " + g.describe() +
                          " has G(0+) > 0, so G_T ~ T G(0) / |w| is not integrable at w = 0 for T > 0");

    SpectralDensity d;
    const double slope0 = (T > 0.0 && covers_zero) ? g.slope_at_zero() : 0.0;
    d.value = [g, T, plo, phi, covers_zero, slope0](double w) {
        const double a = std::abs(w);
        if (a < plo || a > phi) return 0.0;
        if (w == 0.0) {
            if (!covers_zero) return 0.0;
            return T == 0.0 ? g.value_or_zero(0.0) : T * slope0;
        }
        if (w < 0.0 && T == 0.0) return 0.0;
        const double n = spectra::occupancy(a, T);
        return (w > 0.0 ? n + 1.0 : n) * g.value_or_zero(a);
    };
    if (phi < plo)
        d.support = {0.0, 0.0};
    else if (T > 0.0)
        d.support = {-phi, phi};
    else
        d.support = {plo, phi};
    d.features.push_back(0.0);
    for (double f : g.features()) {
        if (!std::isfinite(f)) continue;
        d.features.push_back(f);
        if (T > 0.0) d.features.push_back(-f);
    }
    d.scale = g.scale();
    std::ostringstream os;
    os << g.describe() << " at T=" << T;
    d.label = os.str();
    return d;
}

OverlapResult overlap(const filters::FilterFunction& filter, const SpectralDensity& g,
                      const OverlapOptions& opts) {
    const double lobe = filter.lobe_width();
    const double period = filter.oscillation_period();
    const double c0 = filter.center();
    const auto peaks = filter.peaks();
    const double pk_lo = *std::min_element(peaks.begin(), peaks.end());
    const double pk_hi = *std::max_element(peaks.begin(), peaks.end());
    // Pulse trains leave slowly decaying cross terms beyond the core, so the
    // resolved region grows with the number of sign flips.
    const double flips = period / lobe;
    const double half = opts.core_lobes * lobe * std::max(1.0, flips / 8.0);
    const double budget = static_cast<double>(opts.max_panels) * lobe;

    // Core edges sit on whole oscillation periods from the filter origin, so
    // the oscillating remainder F - <F> integrates to (almost) zero beyond them.
    double core_lo = align_down(pk_lo - half, c0, period);
    double core_hi = align_up(pk_hi + half, c0, period);
    const double margin = 50.0 * period;
    for (double f : g.features) {
        if (!std::isfinite(f)) continue;
        const double lo = std::min(core_lo, align_down(f - margin, c0, period));
        const double hi = std::max(core_hi, align_up(f + margin, c0, period));
        if (hi - lo <= budget) {
            core_lo = lo;
            core_hi = hi;
        }
    }

    const double L = g.support.lo;
    const double U = g.support.hi;
    OverlapResult out;
    if (!(U > L)) return out;

    double ex_lo = std::max(L, core_lo);
    double ex_hi = std::min(U, core_hi);
    if (std::isfinite(U) && U > core_hi && U - ex_lo <= budget) ex_hi = U;
    if (std::isfinite(L) && L < core_lo && ex_hi - L <= budget) ex_lo = L;

    numerics::QuadratureOptions qopts;
    qopts.rel_tol = opts.rel_tol;
    numerics::QuadratureResult total;

    std::vector<double> extra = g.features;
    extra.insert(extra.end(), peaks.begin(), peaks.end());

    if (ex_hi > ex_lo) {
        auto pts = numerics::uniform_breakpoints(ex_lo, ex_hi, lobe, opts.max_panels);
        pts = numerics::merge_breakpoints(std::move(pts), extra);
        const auto f = [&](double w) { return filter(w) * g.value(w); };
        total = numerics::combine(total, numerics::integrate(f, pts, qopts));
    }

    const auto tail = [&](double w) { return filter.envelope(w) * g.value(w); };
    const double up_start = std::max(ex_hi, L);
    if (U > up_start && up_start >= ex_hi) {
        if (std::isfinite(U)) {
            std::vector<double> pts{up_start, U};
            pts = numerics::merge_breakpoints(std::move(pts), extra);
            total = numerics::combine(total, numerics::integrate(tail, pts, qopts));
        } else {
            const double scale = std::max(up_start - c0, lobe);
            total = numerics::combine(total, numerics::integrate_to_infinity(tail, up_start, scale, qopts));
        }
    }
    const double down_end = std::min(ex_lo, U);
    if (down_end > L && down_end <= ex_lo) {
        if (std::isfinite(L)) {
            std::vector<double> pts{L, down_end};
            pts = numerics::merge_breakpoints(std::move(pts), extra);
            total = numerics::combine(total, numerics::integrate(tail, pts, qopts));
        } else {
            const double scale = std::max(c0 - down_end, lobe);
            total = numerics::combine(total,
                                      numerics::integrate_from_minus_infinity(tail, down_end, scale, qopts));
        }
    }

    out.value = std::max(0.0, total.value);
    out.error = total.error;
    out.converged = total.converged;
    out.worst_lo = total.worst_lo;
    out.worst_hi = total.worst_hi;
    return out;
}

double decoherence_rate(const filters::FilterFunction& filter, const SpectralDensity& g,
                        const OverlapOptions& opts) {
    const OverlapResult r = overlap(filter, g, opts);
    if (!r.converged) {
        std::ostringstream msg;
        msg << "decoherence_rate: overlap of " << filter.protocol().describe() << " with " << g.label
            << " did not converge (value " << r.value << ", residual " << r.error << ", worst interval ["
            << r.worst_lo << ", " << r.worst_hi << "])";
        throw NumericError(msg.str());
    }
    return r.value;
}

double decoherence_rate(const filters::FilterFunction& filter, const spectra::BathSpectrum& spectrum,
                        const OverlapOptions& opts) {
    return decoherence_rate(filter, density(spectrum), opts);
}

double decoherence_rate(const filters::FilterFunction& filter, const spectra::ThermalBath& bath,
                        const OverlapOptions& opts) {
    return decoherence_rate(filter, density(bath), opts);
}

double QubitProbeState::sigma_x0() const {
    if (!(theta >= 0.0 && theta <= 0.5 * kPi)) throw std::invalid_argument("probe: theta must lie in [0, pi/2]");
    if (!(phi >= 0.0 && phi < 2.0 * kPi)) throw std::invalid_argument("probe: phi must lie in [0, 2 pi)");
    return std::sin(2.0 * theta) * std::cos(phi);
}

DecoherenceRecord coherence_decay(const QubitProbeState& probe, double rate, double t) {
    if (!(rate >= 0.0)) throw std::invalid_argument("coherence_decay: rate must be >= 0");
    if (!(t >= 0.0)) throw std::invalid_argument("coherence_decay: t must be >= 0");
    DecoherenceRecord rec;
    rec.t = t;
    rec.rate = rate;
    rec.exponent = rate * t;
    rec.coherence = probe.sigma_x0() * std::exp(-rec.exponent);
    // Derive the smaller probability from the larger one so the pair sums to 1 exactly.
    if (rec.coherence >= 0.0) {
        rec.p_plus = 0.5 * (1.0 + rec.coherence);
        rec.p_minus = 1.0 - rec.p_plus;
    } else {
        rec.p_minus = 0.5 * (1.0 - rec.coherence);
        rec.p_plus = 1.0 - rec.p_minus;
    }
    return rec;
}

spectra::BathSpectrum InferenceResult::as_spectrum() const { return spectra::BathSpectrum::tabulated(omega, g); }

InferenceResult infer_spectrum(const std::vector<Measurement>& measurements, const std::vector<double>& grid,
                               double regularization) {
    if (measurements.empty()) throw std::invalid_argument("infer_spectrum: no measurements");
    if (grid.size() < 2) throw std::invalid_argument("infer_spectrum: grid needs at least two points");
    for (std::size_t j = 1; j < grid.size(); ++j)
        if (!(grid[j] > grid[j - 1])) throw std::invalid_argument("infer_spectrum: grid must be strictly increasing");
    if (!(regularization >= 0.0)) throw std::invalid_argument("infer_spectrum: regularization must be >= 0");
    for (const auto& m : measurements) {
        const double c = m.filter.center();
        if (c < grid.front() || c > grid.back())
            throw std::invalid_argument("infer_spectrum: grid does not cover filter centre " + std::to_string(c));
        if (!(m.rate >= 0.0) || !std::isfinite(m.rate))
            throw std::invalid_argument("infer_spectrum: measured rates must be finite and >= 0");
    }

    const auto m = static_cast<Eigen::Index>(measurements.size());
    const auto n = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, n);
    Eigen::VectorXd r(m);
    numerics::QuadratureOptions qopts;
    qopts.rel_tol = 1e-10;
    qopts.abs_tol = 1e-16;
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto& filter = measurements[static_cast<std::size_t>(i)].filter;
        r(i) = measurements[static_cast<std::size_t>(i)].rate;
        const double lobe = filter.lobe_width();
        for (Eigen::Index j = 0; j + 1 < n; ++j) {
            const double a = grid[static_cast<std::size_t>(j)];
            const double b = grid[static_cast<std::size_t>(j + 1)];
            const double h = b - a;
            const auto panels = static_cast<std::size_t>(std::clamp(std::ceil(4.0 * h / lobe), 1.0, 4096.0));
            const auto left = numerics::integrate([&](double w) { return filter(w) * (b - w) / h; }, a, b, qopts, panels);
            const auto right = numerics::integrate([&](double w) { return filter(w) * (w - a) / h; }, a, b, qopts, panels);
            numerics::require_converged(left, "infer_spectrum hat integral");
            numerics::require_converged(right, "infer_spectrum hat integral");
            A(i, j) += left.value;
            A(i, j + 1) += right.value;
        }
    }

    if (regularization == 0.0) {
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
        if (qr.rank() < n)
            throw NumericError("infer_spectrum: the unregularized system is rank-deficient (rank " +
                               std::to_string(qr.rank()) + " < " + std::to_string(n) +
                               " unknowns); supply a positive regularization weight");
    }

    const double a_norm = Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues()(0);
    Eigen::MatrixXd M(m + n, n);
    M.topRows(m) = A;
    M.bottomRows(n) = std::sqrt(regularization) * a_norm * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + n);
    rhs.head(m) = r;

    const auto sol = numerics::nnls(M, rhs);
    InferenceResult out;
    out.omega = grid;
    out.g.assign(sol.x.data(), sol.x.data() + n);
    out.residual_norm = (A * sol.x - r).norm();
    out.converged = sol.converged;
    return out;
}

ZenoRates measurement_thermodynamics(const spectra::ThermalBath& bath, double omega0, double tau,
                                     const OverlapOptions& opts) {
    if (!(tau > 0.0)) throw std::invalid_argument("measurement_thermodynamics: tau must be > 0");
    if (!(omega0 > 0.0)) throw std::invalid_argument("measurement_thermodynamics: omega0 must be > 0");
    const SpectralDensity g = density(bath);
    // F_tau(w - omega0) is the free filter translated to +omega0, i.e. a drive at -omega0.
    const filters::FilterFunction down(filters::ControlProtocol::drive(-omega0, tau));
    const filters::FilterFunction up(filters::ControlProtocol::drive(omega0, tau));
    ZenoRates z;
    z.r_down = decoherence_rate(down, g, opts);
    z.r_up = decoherence_rate(up, g, opts);
    if (!(z.r_down > 0.0))
        throw DomainError("measurement_thermodynamics: R_down = 0, effective temperature undefined");
    if (z.r_up == 0.0) {
        z.t_eff = 0.0;
    } else {
        const double lr = std::log(z.r_down / z.r_up);
        z.t_eff = lr == 0.0 ? std::numeric_limits<double>::infinity() : omega0 / lr;
    }
    return z;
}

} // namespace bathforge::kk
