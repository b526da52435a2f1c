// presets.cpp: bundled figure reproductions with acceptance checks

#include "bathforge/cli/presets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>

#include "bathforge/cli/scenarios.hpp"
#include "bathforge/cli/sha256.hpp"
#include "bathforge/cli/svg.hpp"
#include "bathforge/engine.hpp"
#include "bathforge/numerics/fit.hpp"
#include "bathforge/spectra.hpp"
#include "bathforge/waveguide.hpp"

namespace bathforge::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

ScenarioConfig make(ScenarioKind kind, json params, std::vector<SweepAxis> sweeps, std::optional<std::uint64_t> seed) {
    json doc;
    doc["scenario"]["kind"] = kind_name(kind);
    doc["scenario"]["params"] = std::move(params);
    json sw = json::array();
    for (const auto& a : sweeps)
        sw.push_back({{"name", a.name},
                      {"start", a.start},
                      {"stop", a.stop},
                      {"points", a.points},
                      {"scale", a.scale == SweepScale::Log ? "log" : "linear"}});
    doc["scenario"]["sweep"] = sw;
    if (seed) doc["scenario"]["seed"] = *seed;
    doc["scenario"]["plot"] = true;
    return parse_config(doc);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::vector<double> column(const Table& t, const std::string& name) {
    const std::size_t c = t.column_index(name);
    std::vector<double> out;
    for (std::size_t r = 0; r < t.rows.size(); ++r) out.push_back(t.number(r, c));
    return out;
}

std::vector<std::string> text_column(const Table& t, const std::string& name) {
    const std::size_t c = t.column_index(name);
    std::vector<std::string> out;
    for (const auto& row : t.rows) out.push_back(format_cell(row[c]));
    return out;
}

// Engine preset: hot blackbody above omega0, cold band below omega0.
json engine_params() {
    return {{"omega0", 1.0}, {"T_h", 2.0}, {"T_c", 1.0}, {"modulation", "piflip"}, {"harmonic_cut", 1}};
}

engine::MachineConfig engine_machine(double Omega) {
    engine::MachineConfig c;
    c.omega0 = 1.0;
    c.Omega = Omega;
    c.hot = {spectra::BathSpectrum::blackbody(1.0, 1.0), 2.0};
    c.cold = {spectra::BathSpectrum::blackbody(1.0, 0.0, 1.0), 1.0};
    return c;
}

using Checker = std::function<std::vector<Check>(const std::vector<RunReport>&, const fs::path&,
                                                  std::vector<Artifact>&)>;

Artifact write_file(const fs::path& dir, const std::string& file, const std::string& content) {
    std::ofstream out(dir / file, std::ios::binary);
    out << content;
    return {file, sha256_hex(content), content.size()};
}

std::vector<Check> check_fig2(const std::vector<RunReport>& runs, const fs::path& dir, std::vector<Artifact>& files) {
    std::vector<Check> out;
    const auto g = column(runs[0].table, "g");
    const auto free_eps = column(runs[0].table, "eps_bound_sqrtN");
    const auto cpmg_eps = column(runs[1].table, "eps_bound_sqrtN");
    const auto fit = numerics::fit_line(g, free_eps);
    out.push_back({"free error linear in g tau_c (R^2 > 0.95)", fit.r_squared > 0.95, "R^2 = " + fmt(fit.r_squared)});
    const double lo = *std::min_element(cpmg_eps.begin(), cpmg_eps.end());
    const double hi = *std::max_element(cpmg_eps.begin(), cpmg_eps.end());
    out.push_back({"CPMG(8) error in [1, 5]", lo >= 1.0 && hi <= 5.0, "range [" + fmt(lo) + ", " + fmt(hi) + "]"});
    out.push_back({"CPMG(8) variation <= 1.5x", hi / lo <= 1.5, "ratio " + fmt(hi / lo)});
    double worst = 0.0;
    for (const auto* r : {&runs[0], &runs[1]}) {
        const auto b = column(r->table, "eps_bound");
        const auto e = column(r->table, "eps_empirical_rms");
        for (std::size_t i = 0; i < b.size(); ++i) worst = std::max(worst, std::abs(e[i] / b[i] - 1.0));
    }
    out.push_back({"Monte-Carlo error within 25% of the bound", worst <= 0.25, "worst deviation " + fmt(worst)});

    PlotStyle style{"Estimation error x sqrt(N_m) vs g tau_c", "g tau_c", "eps sqrt(N_m)", false, true, {}, {}};
    files.push_back(write_file(dir, "fig2.svg",
                               render_svg({{"free", g, free_eps}, {"CPMG(8)", g, cpmg_eps}}, style)));
    return out;
}

std::vector<Check> check_fig3(const std::vector<RunReport>& runs, const fs::path& dir, std::vector<Artifact>& files) {
    const Table& t = runs[0].table;
    const auto T = column(t, "T");
    const auto p = column(t, "p");
    const auto inf = column(t, "infidelity");
    std::vector<double> ts, r0, r1, r2;
    double worst_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < T.size(); ++i) {
        if (p[i] == 0.0) ts.push_back(T[i]), r0.push_back(inf[i]);
        if (p[i] == 1.0) r1.push_back(inf[i]);
        if (p[i] == 2.0) r2.push_back(inf[i]);
    }
    for (std::size_t i = 0; i < std::min(r0.size(), r2.size()); ++i) worst_ratio = std::min(worst_ratio, r0[i] / r2[i]);
    PlotStyle style{"Transfer infidelity vs T", "T", "infidelity", false, true, {}, {}};
    files.push_back(write_file(dir, "fig3.svg", render_svg({{"p=0", ts, r0}, {"p=1", ts, r1}, {"p=2", ts, r2}}, style)));
    return {{"infidelity(p=2) <= infidelity(p=0) / 10 at every T", worst_ratio >= 10.0,
             "smallest ratio " + fmt(worst_ratio)}};
}

std::vector<Check> check_fig7d(const std::vector<RunReport>& runs, const fs::path& dir, std::vector<Artifact>& files) {
    const Table& t = runs[0].table;
    const auto time = column(t, "t");
    const auto c = column(t, "concurrence");
    const auto p1 = column(t, "P1");
    const auto p2 = column(t, "P2");
    const double peak = *std::max_element(c.begin(), c.end());
    PlotStyle style{"Two-atom exchange at the band edge", "t [s]", "population / concurrence", false, false, {}, {0.9663}};
    files.push_back(write_file(dir, "fig7d.svg",
                               render_svg({{"P1", time, p1}, {"P2", time, p2}, {"concurrence", time, c}}, style)));
    return {{"peak concurrence in [0.90, 0.99] (reference 0.9663)", peak >= 0.90 && peak <= 0.99,
             "peak " + fmt(peak)}};
}

std::vector<Check> check_fig16(const std::vector<RunReport>& runs, const fs::path& dir, std::vector<Artifact>& files) {
    const Table& t = runs[0].table;
    const auto sep = column(t, "separated");
    const auto regime = text_column(t, "regime");
    const bool all_sep = std::all_of(sep.begin(), sep.end(), [](double v) { return v == 1.0; });
    const bool all_engine = std::all_of(regime.begin(), regime.end(), [](const std::string& s) { return s == "Engine"; });

    const auto c = engine_machine(0.2);
    Table spec;
    spec.columns = {"omega[rad/s]", "G_hot[1/s]", "G_cold[1/s]"};
    std::vector<double> w, gh, gc;
    for (int i = 0; i <= 400; ++i) {
        const double x = 2.0 * i / 400.0;
        w.push_back(x);
        gh.push_back(c.hot.spectrum.value_or_zero(x));
        gc.push_back(c.cold.spectrum.value_or_zero(x));
        spec.add_row({x, gh.back(), gc.back()});
    }
    files.push_back(write_file(dir, "spectra.csv", to_csv(spec)));
    PlotStyle style{"Separated hot and cold bath spectra", "omega", "G", false, false,
                    {c.omega0 - c.Omega, c.omega0 + c.Omega}, {}};
    files.push_back(write_file(dir, "fig16.svg", render_svg({{"hot", w, gh}, {"cold", w, gc}}, style)));
    return {{"spectra separated at every Omega", all_sep, std::to_string(sep.size()) + " points"},
            {"engine regime below Omega_crit", all_engine, std::to_string(regime.size()) + " points"}};
}

std::vector<Check> check_fig17(const std::vector<RunReport>& runs, const fs::path& dir, std::vector<Artifact>& files) {
    std::vector<Check> out;
    const Table& t = runs[0].table;
    const double th = 2.0, tc = 1.0, w0 = 1.0;
    const double carnot = 1.0 - tc / th;
    const double carnot_cop = tc / (th - tc);
    const double analytic = w0 * (th - tc) / (th + tc);
    const auto wc = engine::critical_modulation(engine_machine(0.5));
    const double rel = wc ? std::abs(*wc / analytic - 1.0) : std::numeric_limits<double>::infinity();
    out.push_back({"Omega_crit = w0 (T_h - T_c) / (T_h + T_c) to 1e-10", rel <= 1e-10, "relative error " + fmt(rel)});
    const auto below = engine::steady_state(engine_machine(analytic * (1.0 - 1e-9)));
    const auto above = engine::steady_state(engine_machine(analytic * (1.0 + 1e-9)));
    const double de = std::abs(below.efficiency_or_cop - carnot);
    const double dc = std::abs(above.efficiency_or_cop - carnot_cop);
    out.push_back({"efficiency -> Carnot below Omega_crit", below.regime == engine::Regime::Engine && de <= 1e-6,
                   "deviation " + fmt(de)});
    out.push_back({"COP -> Carnot COP above Omega_crit", above.regime == engine::Regime::Refrigerator && dc <= 1e-6,
                   "deviation " + fmt(dc)});

    const auto W = column(t, "Omega");
    const auto eta = column(t, "eta_or_cop");
    const auto sigma = column(t, "entropy_production");
    const auto regime = text_column(t, "regime");
    bool bounds = true, switch_ok = true;
    std::vector<double> we, ee, wr, er;
    for (std::size_t i = 0; i < W.size(); ++i) {
        if (sigma[i] < -1e-12) bounds = false;
        if (regime[i] == "Engine") {
            if (!(eta[i] < carnot)) bounds = false;
            if (!(W[i] < analytic)) switch_ok = false;
            we.push_back(W[i]), ee.push_back(eta[i]);
        } else if (regime[i] == "Refrigerator") {
            if (!(eta[i] < carnot_cop)) bounds = false;
            if (!(W[i] > analytic)) switch_ok = false;
            wr.push_back(W[i]), er.push_back(eta[i]);
        } else {
            switch_ok = false;
        }
    }
    out.push_back({"Carnot bounds and second law on the grid", bounds, std::to_string(W.size()) + " points"});
    out.push_back({"regime switches exactly at Omega_crit", switch_ok, ""});
    PlotStyle style{"Efficiency and COP vs Omega", "Omega", "eta / COP", false, false, {analytic}, {carnot, carnot_cop}};
    files.push_back(write_file(dir, "fig17.svg", render_svg({{"efficiency", we, ee}, {"COP", wr, er}}, style)));
    return out;
}

} // namespace

const std::vector<FigureId>& all_figures() {
    static const std::vector<FigureId> ids{FigureId::Fig2, FigureId::Fig3, FigureId::Fig7d, FigureId::Fig16,
                                           FigureId::Fig17};
    return ids;
}

const char* figure_name(FigureId id) {
    switch (id) {
    case FigureId::Fig2: return "Fig2";
    case FigureId::Fig3: return "Fig3";
    case FigureId::Fig7d: return "Fig7d";
    case FigureId::Fig16: return "Fig16";
    case FigureId::Fig17: return "Fig17";
    }
    return "?";
}

std::optional<FigureId> parse_figure(const std::string& name) {
    for (auto id : all_figures())
        if (name == figure_name(id)) return id;
    return std::nullopt;
}

std::vector<PresetRun> preset_runs(FigureId id) {
    switch (id) {
    case FigureId::Fig2: {
        const SweepAxis g{"g", 5.0, 20.0, 3, SweepScale::Log};
        return {{"free", make(ScenarioKind::Estimate, {{"protocol", "free"}}, {g}, 2024)},
                {"cpmg8", make(ScenarioKind::Estimate, {{"protocol", "cpmg"}, {"n_pulses", 8}}, {g}, 2025)}};
    }
    case FigureId::Fig3:
        return {{"transfer", make(ScenarioKind::Transfer,
                                  {{"bath", "band"}, {"level", 1.0}, {"band_lo", 40.0}, {"band_hi", 80.0}},
                                  {{"T", 1.0, 4.0, 13, SweepScale::Linear}}, std::nullopt)}};
    case FigureId::Fig7d: {
        const auto rb = waveguide::rubidium_band_edge_preset();
        return {{"exchange", make(ScenarioKind::Rddi, {{"delta", rb.delta}, {"gamma_fs", rb.gamma_fs}},
                                  {{"t", 0.0, 4.0 * rb.exchange_time, 801, SweepScale::Linear}}, std::nullopt)}};
    }
    case FigureId::Fig16:
        return {{"engine", make(ScenarioKind::Engine, engine_params(), {{"Omega", 0.01, 0.3, 30, SweepScale::Linear}},
                                std::nullopt)}};
    case FigureId::Fig17:
        return {{"engine", make(ScenarioKind::Engine, engine_params(), {{"Omega", 0.005, 0.995, 200, SweepScale::Linear}},
                                std::nullopt)}};
    }
    return {};
}

ReproduceReport reproduce_figure(FigureId id, const std::string& output_dir, int workers) {
    ReproduceReport report;
    const fs::path dir = output_dir;
    fs::create_directories(dir);
    report.output_dir = dir.string();
    std::vector<Artifact> files;
    for (const auto& pr : preset_runs(id)) {
        RunOptions opts;
        opts.output_dir = (dir / pr.label).string();
        opts.workers = workers;
        auto r = run(pr.config, opts);
        for (const auto& a : r.artifacts) files.push_back({pr.label + "/" + a.file, a.sha256, a.bytes});
        if (r.exit_code != kExitOk) report.exit_code = kExitNumeric;
        report.runs.push_back(std::move(r));
    }
    if (report.exit_code == kExitOk) {
        static const std::map<FigureId, Checker> checkers{{FigureId::Fig2, check_fig2},
                                                          {FigureId::Fig3, check_fig3},
                                                          {FigureId::Fig7d, check_fig7d},
                                                          {FigureId::Fig16, check_fig16},
                                                          {FigureId::Fig17, check_fig17}};
        report.checks = checkers.at(id)(report.runs, dir, files);
        for (const auto& c : report.checks)
            if (!c.pass) report.exit_code = kExitAcceptance;
    }
    Table checks;
    checks.columns = {"check", "pass", "detail"};
    for (const auto& c : report.checks)
        checks.add_row({c.name, static_cast<std::int64_t>(c.pass ? 1 : 0), c.detail});
    files.push_back(write_file(dir, "checks.csv", to_csv(checks)));

    json manifest;
    manifest["figure"] = figure_name(id);
    manifest["exit_code"] = report.exit_code;
    json list = json::array();
    for (const auto& a : files) list.push_back({{"file", a.file}, {"sha256", a.sha256}, {"bytes", a.bytes}});
    manifest["files"] = list;
    write_file(dir, "manifest.json", manifest.dump(2) + "\n");
    return report;
}

} // namespace bathforge::cli
