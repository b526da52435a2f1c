// presets.hpp: bundled figure reproductions with acceptance checks

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bathforge/cli/config.hpp"
#include "bathforge/cli/runner.hpp"

namespace bathforge::cli {

enum class FigureId { Fig2, Fig3, Fig7d, Fig16, Fig17 };

const std::vector<FigureId>& all_figures();
const char* figure_name(FigureId id);
std::optional<FigureId> parse_figure(const std::string& name);

struct PresetRun {
    std::string label;        // subdirectory of the figure output
    ScenarioConfig config;
};

std::vector<PresetRun> preset_runs(FigureId id);

struct Check {
    std::string name;
    bool pass{false};
    std::string detail;
};

struct ReproduceReport {
    int exit_code{kExitOk};
    std::string output_dir;
    std::vector<RunReport> runs;
    std::vector<Check> checks;
};

// Runs every preset scenario under output_dir/<label>, writes checks.csv, the
// figure plot and a manifest covering all files.
ReproduceReport reproduce_figure(FigureId id, const std::string& output_dir, int workers = 0);

} // namespace bathforge::cli
