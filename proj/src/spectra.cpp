// spectra.cpp: bath coupling spectra and thermal dressing

#include "bathforge/spectra.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "bathforge/errors.hpp"

namespace bathforge::spectra {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

double lorentz_line(double g, double tau, double x) {
    return g * g * tau / (std::numbers::pi * (1.0 + x * x * tau * tau));
}

} // namespace

BathSpectrum::BathSpectrum(Model model) : model_(std::move(model)) {
    std::visit(Overloaded{
                   [](const Lorentzian& m) {
                       require(m.g >= 0.0 && std::isfinite(m.g), "Lorentzian: g must be finite and >= 0");
                       require(m.tau_c > 0.0 && std::isfinite(m.tau_c), "Lorentzian: tau_c must be > 0");
                       require(m.mode_offset >= 0.0 && std::isfinite(m.mode_offset),
                               "Lorentzian: mode_offset must be >= 0");
                   },
                   [](const Ohmic& m) {
                       require(m.eta >= 0.0 && std::isfinite(m.eta), "Ohmic: eta must be >= 0");
                       require(m.omega_cut > 0.0 && std::isfinite(m.omega_cut), "Ohmic: omega_cut must be > 0");
                   },
                   [](const Blackbody& m) {
                       require(m.amplitude >= 0.0 && std::isfinite(m.amplitude), "Blackbody: amplitude must be >= 0");
                       require(m.omega_min >= 0.0 && m.omega_max > m.omega_min,
                               "Blackbody: need 0 <= omega_min < omega_max");
                   },
                   [](const BandGap1D& m) {
                       require(m.omega_co > 0.0 && std::isfinite(m.omega_co), "BandGap1D: omega_co must be > 0");
                       require(m.gamma_fs >= 0.0 && std::isfinite(m.gamma_fs), "BandGap1D: gamma_fs must be >= 0");
                   },
                   [](const Flat& m) {
                       require(m.level >= 0.0 && std::isfinite(m.level), "Flat: level must be >= 0");
                   },
                   [](const Tabulated& m) { require(m.curve != nullptr, "Tabulated: empty table"); },
               },
               model_);
}

BathSpectrum BathSpectrum::lorentzian(double g, double tau_c, double mode_offset) {
    return BathSpectrum(Lorentzian{g, tau_c, mode_offset});
}
BathSpectrum BathSpectrum::ohmic(double eta, double omega_cut) { return BathSpectrum(Ohmic{eta, omega_cut}); }
BathSpectrum BathSpectrum::blackbody(double amplitude, double omega_min, double omega_max) {
    return BathSpectrum(Blackbody{amplitude, omega_min, omega_max});
}
BathSpectrum BathSpectrum::band_gap(double omega_co, double gamma_fs) {
    return BathSpectrum(BandGap1D{omega_co, gamma_fs});
}
BathSpectrum BathSpectrum::flat(double level) { return BathSpectrum(Flat{level}); }

BathSpectrum BathSpectrum::tabulated(std::vector<double> omega, std::vector<double> value) {
    for (double v : value)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("Tabulated: samples must be finite and >= 0");
    auto curve = std::make_shared<const numerics::MonotoneCubic>(std::move(omega), std::move(value));
    return BathSpectrum(Tabulated{std::move(curve)});
}

Kind BathSpectrum::kind() const { return static_cast<Kind>(model_.index()); }

double BathSpectrum::operator()(double w) const {
    return std::visit(
        Overloaded{
            [w](const Lorentzian& m) {
                if (m.mode_offset == 0.0) return lorentz_line(m.g, m.tau_c, w);
                return 0.5 * (lorentz_line(m.g, m.tau_c, w - m.mode_offset) +
                              lorentz_line(m.g, m.tau_c, w + m.mode_offset));
            },
            [w](const Ohmic& m) { return w >= 0.0 ? m.eta * w * std::exp(-w / m.omega_cut) : 0.0; },
            [w](const Blackbody& m) {
                return (w >= m.omega_min && w <= m.omega_max) ? m.amplitude * w * w * w : 0.0;
            },
            [w](const BandGap1D& m) {
                if (w < m.omega_co) return 0.0;
                const double x = w / m.omega_co - 1.0;
                if (!(x > 0.0)) throw DomainError("BandGap1D: mode density diverges at the band edge");
                return m.gamma_fs / std::sqrt(x);
            },
            [](const Flat& m) { return m.level; },
            [w](const Tabulated& m) { return std::max(0.0, (*m.curve)(w)); },
        },
        model_);
}

Support BathSpectrum::support() const {
    return std::visit(Overloaded{
                          [](const Lorentzian&) { return Support{}; },
                          [](const Ohmic&) { return Support{0.0, kInf}; },
                          [](const Blackbody& m) { return Support{m.omega_min, m.omega_max}; },
                          [](const BandGap1D& m) { return Support{m.omega_co, kInf}; },
                          [](const Flat&) { return Support{}; },
                          [](const Tabulated& m) { return Support{m.curve->lo(), m.curve->hi()}; },
                      },
                      model_);
}

double BathSpectrum::value_or_zero(double w) const {
    const Support s = support();
    if (!s.contains(w)) return 0.0;
    if (kind() == Kind::BandGap1D && w == s.lo) return 0.0;
    return (*this)(w);
}

std::vector<double> BathSpectrum::features() const {
    return std::visit(
        Overloaded{
            [](const Lorentzian& m) {
                const double d = m.mode_offset;
                const double w = 1.0 / m.tau_c;
                std::vector<double> f{0.0};
                for (double c : {-d, d})
                    for (double k : {-3.0, -1.0, 0.0, 1.0, 3.0}) f.push_back(c + k * w);
                return f;
            },
            [](const Ohmic& m) { return std::vector<double>{0.0, m.omega_cut, 5.0 * m.omega_cut}; },
            [](const Blackbody& m) {
                std::vector<double> f{0.0, m.omega_min};
                if (std::isfinite(m.omega_max)) f.push_back(m.omega_max);
                return f;
            },
            [](const BandGap1D& m) { return std::vector<double>{0.0, m.omega_co}; },
            [](const Flat&) { return std::vector<double>{}; },
            [](const Tabulated& m) {
                std::vector<double> f{m.curve->lo(), m.curve->hi()};
                if (m.curve->contains(0.0)) f.push_back(0.0);
                return f;
            },
        },
        model_);
}

double BathSpectrum::scale() const {
    return std::visit(Overloaded{
                          [](const Lorentzian& m) { return 1.0 / m.tau_c + m.mode_offset; },
                          [](const Ohmic& m) { return m.omega_cut; },
                          [](const Blackbody& m) {
                              return std::isfinite(m.omega_max) ? m.omega_max - m.omega_min
                                                                : std::max(1.0, m.omega_min);
                          },
                          [](const BandGap1D& m) { return m.omega_co; },
                          [](const Flat&) { return 1.0; },
                          [](const Tabulated& m) { return m.curve->hi() - m.curve->lo(); },
                      },
                      model_);
}

double BathSpectrum::value_at_zero() const {
    return std::visit(Overloaded{
                          [this](const Lorentzian&) { return (*this)(0.0); },
                          [](const Ohmic&) { return 0.0; },
                          [](const Blackbody&) { return 0.0; },
                          [](const BandGap1D&) { return 0.0; },
                          [](const Flat& m) { return m.level; },
                          [](const Tabulated& m) {
                              if (!m.curve->contains(0.0))
                                  throw DomainError("Tabulated: table does not cover w = 0");
                              return std::max(0.0, (*m.curve)(0.0));
                          },
                      },
                      model_);
}

double BathSpectrum::slope_at_zero() const {
    return std::visit(Overloaded{
                          [](const Lorentzian&) { return 0.0; },
                          [](const Ohmic& m) { return m.eta; },
                          [](const Blackbody&) { return 0.0; },
                          [](const BandGap1D&) { return 0.0; },
                          [](const Flat&) { return 0.0; },
                          [](const Tabulated& m) {
                              if (!m.curve->contains(0.0))
                                  throw DomainError("Tabulated: table does not cover w = 0");
                              return m.curve->derivative(0.0);
                          },
                      },
                      model_);
}

std::string BathSpectrum::describe() const {
    std::ostringstream os;
    std::visit(Overloaded{
                   [&](const Lorentzian& m) {
                       os << "Lorentzian(g=" << m.g << ", tau_c=" << m.tau_c << ", offset=" << m.mode_offset << ")";
                   },
                   [&](const Ohmic& m) { os << "Ohmic(eta=" << m.eta << ", omega_cut=" << m.omega_cut << ")"; },
                   [&](const Blackbody& m) {
                       os << "Blackbody(A=" << m.amplitude << ", [" << m.omega_min << ", " << m.omega_max << "])";
                   },
                   [&](const BandGap1D& m) {
                       os << "BandGap1D(omega_co=" << m.omega_co << ", gamma_fs=" << m.gamma_fs << ")";
                   },
                   [&](const Flat& m) { os << "Flat(" << m.level << ")"; },
                   [&](const Tabulated& m) {
                       os << "Tabulated(" << m.curve->knots().size() << " samples on [" << m.curve->lo() << ", "
                          << m.curve->hi() << "])";
                   },
               },
               model_);
    return os.str();
}

BathSpectrum load_tabulated(std::istream& in) {
    std::vector<double> w, g;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        for (char& c : line)
            if (c == ',') c = ' ';
        std::istringstream ls(line);
        double a = 0.0, b = 0.0;
        std::string rest;
        if (!(ls >> a >> b) || (ls >> rest)) {
            std::ostringstream msg;
            msg << "load_tabulated: line " << lineno << " is not a two-column numeric row";
            throw std::invalid_argument(msg.str());
        }
        w.push_back(a);
        g.push_back(b);
    }
    return BathSpectrum::tabulated(std::move(w), std::move(g));
}

BathSpectrum load_tabulated(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_tabulated: cannot open " + path);
    return load_tabulated(in);
}

double occupancy(double omega, double temperature) {
    if (!(omega > 0.0)) throw DomainError("occupancy: omega must be > 0");
    if (!(temperature >= 0.0)) throw std::invalid_argument("occupancy: temperature must be >= 0");
    if (temperature == 0.0) return 0.0;
    return 1.0 / std::expm1(omega / temperature);
}

double thermal_spectrum(const ThermalBath& bath, double omega) {
    const double T = bath.temperature;
    if (!(T >= 0.0)) throw std::invalid_argument("thermal_spectrum: temperature must be >= 0");
    const BathSpectrum& G = bath.spectrum;
    if (omega > 0.0) return (occupancy(omega, T) + 1.0) * G(omega);
    if (omega < 0.0) return occupancy(-omega, T) * G(-omega);

    if (T == 0.0) return G.value_at_zero();
    if (G.value_at_zero() > 0.0)
        throw DomainError("thermal_spectrum: " + G.describe() +
                          " has G(0+) > 0, so G_T(w -> 0) diverges at T > 0");
    return T * G.slope_at_zero();
}

} // namespace bathforge::spectra
