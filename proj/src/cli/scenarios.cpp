// scenarios.cpp: per-kind parameter schemas and grid-point evaluators

#include "bathforge/cli/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "bathforge/collective.hpp"
#include "bathforge/engine.hpp"
#include "bathforge/estimate.hpp"
#include "bathforge/filters.hpp"
#include "bathforge/kk.hpp"
#include "bathforge/spectra.hpp"
#include "bathforge/transfer.hpp"
#include "bathforge/waveguide.hpp"

namespace bathforge::cli {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ParamSpec number(std::string name, double fallback) { return {std::move(name), ParamType::Number, fallback, {}}; }
ParamSpec integer(std::string name, std::int64_t fallback) {
    return {std::move(name), ParamType::Integer, fallback, {}};
}
ParamSpec choice(std::string name, std::vector<std::string> choices) {
    json fallback = choices.front();
    return {std::move(name), ParamType::Choice, fallback, std::move(choices)};
}

// Symmetric band |w| in [lo, hi] with sin^2 edges, zero in between.
spectra::BathSpectrum band_spectrum(double level, double lo, double hi) {
    if (!(lo >= 0.0) || !(hi > lo)) throw std::invalid_argument("band bath: need 0 <= band_lo < band_hi");
    const int n = 801;
    std::vector<double> w, g;
    for (int i = 0; i < n; ++i) {
        const double x = -hi + 2.0 * hi * i / (n - 1);
        const double a = std::abs(x);
        double v = 0.0;
        if (a > lo && a < hi) {
            const double s = std::sin(kPi * (a - lo) / (hi - lo));
            v = level * s * s;
        }
        w.push_back(x);
        g.push_back(v);
    }
    return spectra::BathSpectrum::tabulated(std::move(w), std::move(g));
}

// Peak near peak_omega that vanishes quadratically at w = 0.
spectra::BathSpectrum peaked_spectrum(double level, double peak, double width) {
    if (!(peak > 0.0) || !(width > 0.0) || !(level >= 0.0))
        throw std::invalid_argument("peaked bath: need peak_omega, peak_width > 0 and peak_level >= 0");
    const int n = 1201;
    const double hi = peak + 12.0 * width;
    std::vector<double> w, g;
    for (int i = 0; i < n; ++i) {
        const double x = hi * i / (n - 1);
        const double d = (x - peak) / width;
        w.push_back(x);
        g.push_back(level * (x / peak) * (x / peak) * std::exp(-0.5 * d * d));
    }
    return spectra::BathSpectrum::tabulated(std::move(w), std::move(g));
}

spectra::BathSpectrum make_bath(const Params& p) {
    const std::string kind = p.text("bath");
    if (kind == "lorentzian")
        return spectra::BathSpectrum::lorentzian(p.number("g"), p.number("tau_c"), p.number("mode_offset"));
    if (kind == "ohmic") return spectra::BathSpectrum::ohmic(p.number("eta"), p.number("omega_cut"));
    if (kind == "flat") return spectra::BathSpectrum::flat(p.number("level"));
    if (kind == "band") return band_spectrum(p.number("level"), p.number("band_lo"), p.number("band_hi"));
    if (kind == "peaked") return peaked_spectrum(p.number("peak_level"), p.number("peak_omega"), p.number("peak_width"));
    throw std::invalid_argument("unknown bath '" + kind + "'");
}

filters::ControlProtocol make_protocol(const Params& p, double duration) {
    const std::string kind = p.text("protocol");
    if (kind == "free") return filters::ControlProtocol::free(duration);
    if (kind == "cpmg") return filters::ControlProtocol::cpmg(p.integer("n_pulses"), duration);
    if (kind == "drive") return filters::ControlProtocol::drive(p.number("rabi"), duration);
    return filters::ControlProtocol::sin_p(p.integer("p"), p.number("alpha0"), duration);
}

std::vector<ParamSpec> protocol_params() {
    return {choice("protocol", {"free", "cpmg", "drive", "sinp"}), integer("n_pulses", 8), number("rabi", 0.0),
            integer("p", 0), number("alpha0", 1.0)};
}

std::vector<ParamSpec> bath_params(std::vector<std::string> kinds) {
    return {choice("bath", std::move(kinds)), number("g", 1.0), number("tau_c", 1.0), number("mode_offset", 0.0),
            number("eta", 0.1), number("omega_cut", 10.0), number("level", 1.0)};
}

template <class... Lists>
std::vector<ParamSpec> concat(Lists... lists) {
    std::vector<ParamSpec> out;
    (out.insert(out.end(), lists.begin(), lists.end()), ...);
    return out;
}

// ---- Spectra ---------------------------------------------------------------

ScenarioDef spectra_def() {
    ScenarioDef d;
    d.kind = ScenarioKind::Spectra;
    d.params = concat(protocol_params(), std::vector<ParamSpec>{number("t", 1.0), number("omega_lo", -20.0),
                                                                number("omega_hi", 20.0), integer("points", 401)});
    d.evaluate = [](const Params& p, std::uint64_t) {
        const filters::FilterFunction f(make_protocol(p, p.number("t")));
        const int n = p.integer("points");
        if (n < 2) throw std::invalid_argument("Spectra: points must be >= 2");
        return filters::sample_filter(f, p.number("omega_lo"), p.number("omega_hi"), static_cast<std::size_t>(n));
    };
    d.plot = {"Filter function", "omega", {"F"}, "", false, false};
    return d;
}

// ---- Decohere --------------------------------------------------------------

ScenarioDef decohere_def() {
    ScenarioDef d;
    d.kind = ScenarioKind::Decohere;
    d.params = concat(bath_params({"lorentzian", "ohmic", "flat"}), protocol_params(),
                      std::vector<ParamSpec>{number("temperature", 0.0), number("t", 1.0),
                                             number("theta", kPi / 4.0), number("phi", 0.0)});
    d.evaluate = [](const Params& p, std::uint64_t) {
        const auto bath = make_bath(p);
        const double t = p.number("t");
        const filters::FilterFunction f(make_protocol(p, t));
        const double T = p.number("temperature");
        const double rate = T > 0.0 ? kk::decoherence_rate(f, spectra::ThermalBath{bath, T})
                                    : kk::decoherence_rate(f, bath);
        const auto rec = kk::coherence_decay({p.number("theta"), p.number("phi")}, rate, t);
        Table out;
        out.columns = {"t[s]", "R[1/s]", "exponent[1]", "coherence[1]", "p_plus[1]", "p_minus[1]"};
        out.add_row({rec.t, rec.rate, rec.exponent, rec.coherence, rec.p_plus, rec.p_minus});
        return out;
    };
    d.plot = {"Coherence decay", "t", {"coherence"}, "", false, false};
    return d;
}

// ---- Diagnose --------------------------------------------------------------

ScenarioDef diagnose_def() {
    ScenarioDef d;
    d.kind = ScenarioKind::Diagnose;
    d.params = {number("g", 1.0),           number("tau_c", 1.0),          integer("n_filters", 40),
                number("t_filter", 20.0),   number("rabi_span", 5.0),      number("grid_half_width", 7.0),
                number("grid_spacing", 0.5), number("regularization", 1e-6), number("check_range", 3.0)};
    d.evaluate = [](const Params& p, std::uint64_t) {
        const double tau = p.number("tau_c");
        const auto truth = spectra::BathSpectrum::lorentzian(p.number("g"), tau);
        const int n = p.integer("n_filters");
        if (n < 2) throw std::invalid_argument("Diagnose: n_filters must be >= 2");
        const double t = p.number("t_filter") * tau;
        const double span = p.number("rabi_span") / tau;
        std::vector<kk::Measurement> ms;
        for (int i = 0; i < n; ++i) {
            const double rabi = -span + 2.0 * span * i / (n - 1);
            filters::FilterFunction f(filters::ControlProtocol::drive(rabi, t));
            const double r = kk::decoherence_rate(f, truth);
            ms.push_back({std::move(f), r});
        }
        // Grid spacing in units of the filter's main-lobe FWHM (5.566 / t).
        const double h = p.number("grid_spacing") * 5.566 / t;
        const double half = p.number("grid_half_width") / tau;
        if (!(h > 0.0) || !(half > 0.0)) throw std::invalid_argument("Diagnose: grid must be non-empty");
        const int m = static_cast<int>(std::floor(half / h));
        std::vector<double> grid;
        for (int i = -m; i <= m; ++i) grid.push_back(i * h);
        const auto inv = kk::infer_spectrum(ms, grid, p.number("regularization"));
        const double range = p.number("check_range") / tau;
        Table out;
        out.columns = {"omega[rad/s]", "G_inferred[1/s]", "G_true[1/s]", "relative_error[1]", "in_check_range"};
        for (std::size_t i = 0; i < inv.omega.size(); ++i) {
            const double w = inv.omega[i];
            const double g = truth(w);
            out.add_row({w, inv.g[i], g, std::abs(inv.g[i] - g) / g,
                         static_cast<std::int64_t>(std::abs(w) <= range ? 1 : 0)});
        }
        return out;
    };
    d.plot = {"Spectrum inversion", "omega", {"G_inferred", "G_true"}, "", false, false};
    return d;
}

// ---- Estimate --------------------------------------------------------------

ScenarioDef estimate_def() {
    ScenarioDef d;
    d.kind = ScenarioKind::Estimate;
    d.uses_seed = true;
    d.params = {choice("protocol", {"free", "cpmg"}),
                choice("estimand", {"tau_c", "g", "t2"}),
                integer("n_pulses", 8),
                number("g", 10.0),
                number("t2", 1.0),
                number("tau_c", 1.0),
                integer("n_measurements", 10000),
                number("t_lo", 1e-3),
                number("t_hi", 10.0),
                integer("repetitions", 200)};
    d.evaluate = [](const Params& p, std::uint64_t seed) {
        const double tau = p.number("tau_c");
        estimate::EstimationProblem prob;
        const std::string which = p.text("estimand");
        prob.bath = which == "tau_c" ? estimate::lorentzian_correlation_time(p.number("g"), tau)
                    : which == "g"   ? estimate::lorentzian_coupling(p.number("g"), tau)
                                     : estimate::lorentzian_t2(p.number("t2"), tau);
        prob.protocol = p.text("protocol") == "free" ? estimate::free_evolution() : estimate::cpmg(p.integer("n_pulses"));
        prob.n_measurements = p.integer64("n_measurements");
        const auto rep = estimate::optimize_time(prob, p.number("t_lo") * tau, p.number("t_hi") * tau);
        const int reps = p.integer("repetitions");
        double rms = kNaN, mean_abs = kNaN;
        std::int64_t samples = 0;
        if (reps > 0) {
            const auto emp = estimate::simulate_estimation(prob, rep.t_opt, seed, reps);
            rms = emp.rms_relative_error;
            mean_abs = emp.mean_abs_relative_error;
            samples = emp.samples_used;
        }
        const double root_n = std::sqrt(static_cast<double>(prob.n_measurements));
        Table out;
        out.columns = {"g[1/s]",
                       "t_opt[s]",
                       "qfi[1]",
                       "eps_bound[1]",
                       "eps_bound_sqrtN[1]",
                       "eps_empirical_rms[1]",
                       "eps_empirical_mean_abs[1]",
                       "samples_used",
                       "boundary_warning"};
        out.add_row({p.number("g"), rep.t_opt, rep.qfi_at_opt, rep.relative_error_bound,
                     rep.relative_error_bound * root_n, rms, mean_abs, samples,
                     static_cast<std::int64_t>(rep.boundary_warning ? 1 : 0)});
        return out;
    };
    d.plot = {"Estimation error", "g", {"eps_bound_sqrtN"}, "", false, false};
    return d;
}

// ---- Transfer --------------------------------------------------------------

ScenarioDef transfer_def() {
    ScenarioDef d;
    d.kind = ScenarioKind::Transfer;
    d.params = concat(bath_params({"band", "lorentzian", "flat"}),
                      std::vector<ParamSpec>{number("band_lo", 40.0), number("band_hi", 80.0), number("T", 1.0),
                                             number("alpha0", 1.0)});
    d.evaluate = [](const Params& p, std::uint64_t) {
        const auto rows = transfer::tradeoff_curve(make_bath(p), {p.number("T")}, {0, 1, 2}, p.number("alpha0"));
        return transfer::tradeoff_table(rows);
    };
    d.plot = {"Transfer infidelity", "T", {"infidelity"}, "p", false, true};
    return d;
}

// ---- Cat -------------------------------------------------------------------

ScenarioDef cat_def() {
    ScenarioDef d;
    d.kind = ScenarioKind::Cat;
    d.params = {integer("n_qubits", 4),
                choice("kernel", {"markov", "ohmic"}),
                number("f_rate", 1.0),
                number("gamma_rate", 0.0),
                number("eta", 0.1),
                number("omega_cut", 10.0),
                number("temperature", 0.0),
                number("suppression", 1.0),
                number("omega0", 0.0),
                number("t", kPi / 8.0)};
    d.evaluate = [](const Params& p, std::uint64_t) {
        const int n = p.integer("n_qubits");
        const auto kernel =
            p.text("kernel") == "markov"
                ? collective::markovian_kernel(p.number("f_rate"), p.number("gamma_rate"))
                : collective::dephasing_kernel(
                      spectra::ThermalBath{spectra::BathSpectrum::ohmic(p.number("eta"), p.number("omega_cut")),
                                           p.number("temperature")},
                      p.number("suppression"));
        const double t = p.number("t");
        const auto start = collective::DickeState::coherent(n, kPi / 2.0, 0.0);
        const auto state = collective::evolve(start, kernel, p.number("omega0"), t);
        const auto best = collective::best_equatorial_cat_fidelity(state);
        Table out;
        out.columns = {"t[s]", "f[1]", "gamma[1]", "cat_fidelity[1]", "cat_phi[rad]"};
        out.add_row({t, kernel.lamb_phase(t), kernel.decoherence_exponent(t), best.fidelity, best.phi});
        return out;
    };
    d.plot = {"Bath-induced cat fidelity", "t", {"cat_fidelity"}, "", false, false};
    return d;
}

// ---- Rddi ------------------------------------------------------------------

ScenarioDef rddi_def() {
    ScenarioDef d;
    d.kind = ScenarioKind::Rddi;
    const auto rb = waveguide::rubidium_band_edge_preset();
    d.params = {number("omega_a", 0.75), number("omega_co", 1.0), number("gamma_fs", rb.gamma_fs),
                number("lambda_a", 1.0), number("delta", 0.0),   number("t", rb.exchange_time)};
    d.evaluate = [](const Params& p, std::uint64_t) {
        const double gamma = p.number("gamma_fs");
        const auto r = waveguide::rddi_strength_range(
            {p.number("omega_a"), p.number("omega_co"), gamma, p.number("lambda_a")});
        // delta <= 0 selects the band-edge strength.
        const double delta = p.number("delta") > 0.0 ? p.number("delta") : r.delta;
        const double t = p.number("t");
        const auto s = waveguide::two_atom_dynamics(delta, gamma, {t}).front();
        Table out;
        out.columns = {"omega_a[rad/s]", "delta_edge[rad/s]", "xi[1]", "delta_used[rad/s]", "t[s]",
                       "P1[1]",          "P2[1]",             "P_gg[1]", "concurrence[1]"};
        out.add_row({p.number("omega_a"), r.delta, r.xi, delta, t, s.p1, s.p2, s.p_ground, s.concurrence});
        return out;
    };
    d.plot = {"Two-atom exchange", "t", {"P1", "P2", "concurrence"}, "", false, false};
    return d;
}

// ---- Casimir ---------------------------------------------------------------

ScenarioDef casimir_def() {
    ScenarioDef d;
    d.kind = ScenarioKind::Casimir;
    d.params = {number("z_over_lambda", 30.0), number("lambda_e", 1.0), number("a", 0.01), number("alpha0", 1.0)};
    d.evaluate = [](const Params& p, std::uint64_t) {
        const double x = p.number("z_over_lambda");
        const double le = p.number("lambda_e");
        const double z = x * le;
        const double near = x < 0.1 ? waveguide::casimir_shape(x, waveguide::Zone::Near) : kNaN;
        const double far = x > 10.0 ? waveguide::casimir_shape(x, waveguide::Zone::Far) : kNaN;
        const waveguide::TemLineConfig cfg{le, p.number("a"), p.number("alpha0")};
        const auto u = waveguide::tem_pair_energy(cfg, z);
        const double r1 = waveguide::nonadditivity_ratio(cfg.alpha0, z, waveguide::Tem1D{cfg.a});
        const double r3 = waveguide::nonadditivity_ratio(cfg.alpha0, z, waveguide::FreeSpace3D{});
        Table out;
        out.columns = {"z_over_lambda[1]", "F_near[1]", "F_far[1]", "F_tem[1]", "U_tem[1]",
                       "ratio_1d[1]",      "ratio_3d[1]", "tem_dominant"};
        out.add_row({x, near, far, waveguide::tem_shape(x), u.energy, r1, r3,
                     static_cast<std::int64_t>(u.tem_dominant ? 1 : 0)});
        return out;
    };
    d.plot = {"Casimir shape", "z_over_lambda", {"F_tem", "F_far", "F_near"}, "", true, true};
    return d;
}

// ---- Engine ----------------------------------------------------------------

engine::MachineConfig machine(const Params& p) {
    engine::MachineConfig c;
    c.omega0 = p.number("omega0");
    c.Omega = p.number("Omega");
    const double hot_min = p.number("hot_omega_min") > 0.0 ? p.number("hot_omega_min") : c.omega0;
    const double cold_cut = p.number("cold_omega_cut") > 0.0 ? p.number("cold_omega_cut") : c.omega0;
    c.hot = {spectra::BathSpectrum::blackbody(p.number("hot_amplitude"), hot_min), p.number("T_h")};
    c.cold = {spectra::BathSpectrum::blackbody(p.number("cold_amplitude"), 0.0, cold_cut), p.number("T_c")};
    if (p.text("modulation") == "piflip") c.modulation = engine::PiFlip{};
    else c.modulation = engine::Sinusoidal{p.number("depth")};
    c.harmonic_cut = p.integer("harmonic_cut");
    return c;
}

ScenarioDef engine_def() {
    ScenarioDef d;
    d.kind = ScenarioKind::Engine;
    d.params = {number("omega0", 1.0),        number("Omega", 0.2),          number("T_h", 2.0),
                number("T_c", 1.0),           choice("modulation", {"piflip", "sinusoidal"}),
                number("depth", 1.0),         integer("harmonic_cut", 1),   number("hot_amplitude", 1.0),
                number("hot_omega_min", 0.0), number("cold_amplitude", 1.0), number("cold_omega_cut", 0.0)};
    d.evaluate = [](const Params& p, std::uint64_t) {
        const auto c = machine(p);
        const auto op = engine::steady_state(c);
        const auto sep = engine::spectral_separation_report(c);
        Table out;
        out.columns = {"Omega[rad/s]", "regime",   "eta_or_cop[1]", "J_h[1/s^2]",   "J_c[1/s^2]",  "P[1/s^2]",
                       "p_e[1]",       "entropy_production[1/s]", "separated", "cold_leakage[1]", "hot_leakage[1]"};
        out.add_row({c.Omega, std::string(engine::regime_name(op.regime)), op.efficiency_or_cop, op.j_hot,
                     op.j_cold, op.power, op.p_excited, op.entropy_production,
                     static_cast<std::int64_t>(sep.separated ? 1 : 0), sep.cold_leakage, sep.hot_leakage});
        return out;
    };
    d.summary = [](const Params& p) {
        const auto c = machine(p);
        const auto wc = engine::critical_modulation(c);
        const double th = c.hot.temperature, tc = c.cold.temperature;
        Table out;
        out.columns = {"omega_crit[rad/s]", "omega_crit_analytic[rad/s]", "carnot_efficiency[1]", "carnot_cop[1]"};
        out.add_row({wc ? *wc : kNaN, c.omega0 * (th - tc) / (th + tc), 1.0 - tc / th, tc / (th - tc)});
        return out;
    };
    d.plot = {"Machine efficiency / COP", "Omega", {"eta_or_cop"}, "regime", false, false};
    return d;
}

// ---- Zeno ------------------------------------------------------------------

ScenarioDef zeno_def() {
    ScenarioDef d;
    d.kind = ScenarioKind::Zeno;
    d.params = {number("omega0", 1.0),     number("temperature", 1.0), choice("bath", {"peaked", "ohmic"}),
                number("eta", 0.1),        number("omega_cut", 10.0),  number("peak_omega", 2.0),
                number("peak_width", 0.3), number("peak_level", 1.0),  number("tau", 1.0)};
    d.evaluate = [](const Params& p, std::uint64_t) {
        const spectra::ThermalBath bath{make_bath(p), p.number("temperature")};
        const double tau = p.number("tau");
        const auto z = kk::measurement_thermodynamics(bath, p.number("omega0"), tau);
        Table out;
        out.columns = {"tau[s]", "R_up[1/s]", "R_down[1/s]", "T_eff[1]", "T_bath[1]"};
        out.add_row({tau, z.r_up, z.r_down, z.t_eff, bath.temperature});
        return out;
    };
    d.plot = {"Measurement-induced effective temperature", "tau", {"T_eff", "T_bath"}, "", true, false};
    return d;
}

} // namespace

const ParamSpec* ScenarioDef::find(const std::string& name) const {
    for (const auto& s : params)
        if (s.name == name) return &s;
    return nullptr;
}

const json& Params::at(const std::string& name) const {
    if (!values_.contains(name)) throw std::invalid_argument("missing parameter '" + name + "'");
    return values_.at(name);
}

double Params::number(const std::string& name) const { return at(name).get<double>(); }

std::int64_t Params::integer64(const std::string& name) const {
    const auto& v = at(name);
    if (v.is_number_integer()) return v.get<std::int64_t>();
    const double d = v.get<double>();
    if (d != std::round(d)) throw std::invalid_argument("parameter '" + name + "' must be an integer");
    return static_cast<std::int64_t>(std::llround(d));
}

int Params::integer(const std::string& name) const {
    const auto v = integer64(name);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        throw std::invalid_argument("parameter '" + name + "' is out of range");
    return static_cast<int>(v);
}

std::string Params::text(const std::string& name) const { return at(name).get<std::string>(); }
bool Params::flag(const std::string& name) const { return at(name).get<bool>(); }

void Params::set(const std::string& name, double value) {
    if (values_.contains(name) && values_.at(name).is_number_integer() && value == std::round(value))
        values_[name] = static_cast<std::int64_t>(std::llround(value));
    else
        values_[name] = value;
}

const ScenarioDef& scenario(ScenarioKind kind) {
    static const std::map<ScenarioKind, ScenarioDef> defs = [] {
        std::map<ScenarioKind, ScenarioDef> m;
        for (auto d : {spectra_def(), decohere_def(), diagnose_def(), estimate_def(), transfer_def(), cat_def(),
                       rddi_def(), casimir_def(), engine_def(), zeno_def()})
            m.emplace(d.kind, std::move(d));
        return m;
    }();
    return defs.at(kind);
}

} // namespace bathforge::cli
