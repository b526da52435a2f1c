// runner.cpp: deterministic sweep execution and artifact manifests

#include "bathforge/cli/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <thread>

#include "bathforge/cli/scenarios.hpp"
#include "bathforge/cli/sha256.hpp"
#include "bathforge/cli/svg.hpp"
#include "bathforge/errors.hpp"
#include "json.hpp"

namespace bathforge::cli {

namespace fs = std::filesystem;

namespace {

struct PointOutcome {
    std::optional<Table> table;
    std::string error;
};

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string base_name(const std::string& column) {
    const auto pos = column.find('[');
    return pos == std::string::npos ? column : column.substr(0, pos);
}

bool has_column(const Table& t, const std::string& name) {
    for (const auto& c : t.columns)
        if (base_name(c) == name) return true;
    return false;
}

Artifact write_artifact(const fs::path& dir, const std::string& file, const std::string& content) {
    const fs::path path = dir / file;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
    out.close();
    return {file, sha256_hex(content), content.size()};
}

std::string render_plot(const Table& table, const PlotSpec& spec, const std::string& x_name) {
    std::size_t xi = 0;
    try {
        xi = table.column_index(x_name);
    } catch (const std::exception&) {
        xi = 0;
    }
    std::optional<std::size_t> gi;
    if (!spec.group.empty()) {
        try {
            gi = table.column_index(spec.group);
        } catch (const std::exception&) {
        }
    }
    std::vector<Series> series;
    std::map<std::string, std::size_t> slot;
    for (const auto& y : spec.y) {
        std::size_t yi = 0;
        try {
            yi = table.column_index(y);
        } catch (const std::exception&) {
            continue;
        }
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            std::string label = table.columns[yi];
            if (gi) label += " " + spec.group + "=" + format_cell(table.rows[r][*gi]);
            auto [it, fresh] = slot.try_emplace(label, series.size());
            if (fresh) series.push_back({label, {}, {}});
            const auto as_number = [](const Cell& c) {
                if (const auto* d = std::get_if<double>(&c)) return *d;
                if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
                return std::nan("");
            };
            series[it->second].x.push_back(as_number(table.rows[r][xi]));
            series[it->second].y.push_back(as_number(table.rows[r][yi]));
        }
    }
    PlotStyle style;
    style.title = spec.title;
    style.x_label = table.columns.empty() ? x_name : table.columns[xi];
    style.y_label = spec.y.empty() ? "" : spec.y.front();
    style.log_x = spec.log_x;
    style.log_y = spec.log_y;
    return render_svg(series, style);
}

} // namespace

int worker_count(int requested) {
    if (requested > 0) return requested;
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("BATHFORGE_WORKERS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && cap > 0) n = std::min<long>(n, cap);
    }
    return std::max(1, n);
}

std::vector<std::vector<double>> sweep_grid(const std::vector<SweepAxis>& axes) {
    std::vector<std::vector<double>> grid{{}};
    for (const auto& axis : axes) {
        std::vector<std::vector<double>> next;
        const auto vals = axis.values();
        for (const auto& prefix : grid) {
            for (double v : vals) {
                auto p = prefix;
                p.push_back(v);
                next.push_back(std::move(p));
            }
        }
        grid = std::move(next);
    }
    return grid;
}

std::uint64_t point_seed(std::uint64_t seed, std::size_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (static_cast<std::uint64_t>(index) + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

RunReport execute(const ScenarioConfig& config, int workers) {
    const ScenarioDef& def = scenario(config.kind);
    const auto grid = sweep_grid(config.sweeps);
    std::vector<PointOutcome> outcomes(grid.size());
    std::atomic<std::size_t> next{0};

    const auto work = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            Params p(config.params);
            for (std::size_t a = 0; a < config.sweeps.size(); ++a) p.set(config.sweeps[a].name, grid[i][a]);
            try {
                outcomes[i].table = def.evaluate(p, point_seed(config.seed.value_or(0), i));
            } catch (const std::exception& e) {
                outcomes[i].error = e.what();
            }
        }
    };
    const int n = std::min<int>(worker_count(workers), static_cast<int>(std::max<std::size_t>(1, grid.size())));
    std::vector<std::thread> pool;
    for (int w = 1; w < n; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    RunReport report;
    std::vector<std::string> prefix;   // sweep axes not already echoed by the point table
    bool have_columns = false;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto& o = outcomes[i];
        if (!o.table) {
            report.failures.push_back({i, grid[i], o.error});
            continue;
        }
        if (!have_columns) {
            for (const auto& axis : config.sweeps)
                if (!has_column(*o.table, axis.name)) prefix.push_back(axis.name);
            report.table.columns = prefix;
            report.table.columns.insert(report.table.columns.end(), o.table->columns.begin(), o.table->columns.end());
            have_columns = true;
        }
        for (auto& row : o.table->rows) {
            std::vector<Cell> full;
            for (const auto& name : prefix) {
                for (std::size_t a = 0; a < config.sweeps.size(); ++a)
                    if (config.sweeps[a].name == name) full.emplace_back(grid[i][a]);
            }
            full.insert(full.end(), row.begin(), row.end());
            report.table.add_row(std::move(full));
        }
    }
    if (def.summary) {
        try {
            report.summary = def.summary(Params(config.params));
        } catch (const std::exception& e) {
            report.failures.push_back({grid.size(), {}, std::string("summary: ") + e.what()});
        }
    }
    report.exit_code = report.failures.empty() ? kExitOk : kExitNumeric;
    return report;
}

RunReport run(const ScenarioConfig& config, const RunOptions& options) {
    RunReport report = execute(config, options.workers);
    const fs::path dir = options.output_dir.value_or(config.output_dir);
    fs::create_directories(dir);
    report.output_dir = dir.string();
    const std::string stem = lower(kind_name(config.kind));

    report.artifacts.push_back(write_artifact(dir, stem + ".csv", to_csv(report.table)));
    if (report.summary) report.artifacts.push_back(write_artifact(dir, stem + "_summary.csv", to_csv(*report.summary)));
    if (!report.failures.empty()) {
        Table f;
        f.columns = {"point"};
        for (const auto& a : config.sweeps) f.columns.push_back(a.name);
        f.columns.push_back("error");
        for (const auto& pf : report.failures) {
            std::vector<Cell> row{static_cast<std::int64_t>(pf.index)};
            for (std::size_t a = 0; a < config.sweeps.size(); ++a)
                row.emplace_back(a < pf.sweep_values.size() ? pf.sweep_values[a] : std::nan(""));
            row.emplace_back(pf.message);
            f.add_row(std::move(row));
        }
        report.artifacts.push_back(write_artifact(dir, "failures.csv", to_csv(f)));
    }
    if (config.plot) {
        const PlotSpec& spec = scenario(config.kind).plot;
        const std::string x = config.sweeps.empty() || !spec.x.empty() ? spec.x : config.sweeps.front().name;
        report.artifacts.push_back(write_artifact(dir, stem + ".svg", render_plot(report.table, spec, x)));
    }

    nlohmann::json manifest;
    manifest["kind"] = kind_name(config.kind);
    manifest["config_sha256"] = config_hash(config);
    manifest["config"] = to_json(config);
    manifest["points"] = sweep_grid(config.sweeps).size();
    manifest["failures"] = report.failures.size();
    manifest["exit_code"] = report.exit_code;
    nlohmann::json files = nlohmann::json::array();
    for (const auto& a : report.artifacts) files.push_back({{"file", a.file}, {"sha256", a.sha256}, {"bytes", a.bytes}});
    manifest["files"] = files;
    write_artifact(dir, "manifest.json", manifest.dump(2) + "\n");
    return report;
}

} // namespace bathforge::cli
