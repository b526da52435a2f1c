// runner.hpp: deterministic sweep execution and artifact manifests

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bathforge/cli/config.hpp"
#include "bathforge/table.hpp"

namespace bathforge::cli {

enum ExitCode : int { kExitOk = 0, kExitSchema = 2, kExitNumeric = 3, kExitAcceptance = 4 };

struct RunOptions {
    std::optional<std::string> output_dir;   // overrides the configuration's output_dir
    int workers{0};                          // 0: BATHFORGE_WORKERS or hardware concurrency
};

struct Artifact {
    std::string file;     // relative to the output directory
    std::string sha256;
    std::uintmax_t bytes{0};
};

struct PointFailure {
    std::size_t index{0};
    std::vector<double> sweep_values;
    std::string message;
};

struct RunReport {
    int exit_code{kExitOk};
    std::string output_dir;
    Table table;
    std::optional<Table> summary;
    std::vector<PointFailure> failures;
    std::vector<Artifact> artifacts;   // manifest.json itself excluded
};

// BATHFORGE_WORKERS caps the pool; requested > 0 takes precedence.
int worker_count(int requested = 0);

// Grid points in row-major order, the first sweep axis varying slowest.
std::vector<std::vector<double>> sweep_grid(const std::vector<SweepAxis>& axes);

// Per-point seed: splitmix64 of the configuration seed and the point index.
std::uint64_t point_seed(std::uint64_t seed, std::size_t index);

// Evaluates the sweep without touching the filesystem.
RunReport execute(const ScenarioConfig& config, int workers = 0);

// execute() plus <kind>.csv, optional <kind>_summary.csv, failures.csv,
// <kind>.svg and manifest.json in the output directory.
RunReport run(const ScenarioConfig& config, const RunOptions& options = {});

} // namespace bathforge::cli
