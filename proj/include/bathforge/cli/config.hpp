// config.hpp: declarative scenario configuration (JSON)

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace bathforge::cli {

enum class ScenarioKind { Spectra, Decohere, Diagnose, Estimate, Transfer, Cat, Rddi, Casimir, Engine, Zeno };

const std::vector<ScenarioKind>& all_kinds();
const char* kind_name(ScenarioKind kind);
std::optional<ScenarioKind> parse_kind(const std::string& name);

enum class SweepScale { Linear, Log };

struct SweepAxis {
    std::string name;
    double start{0.0};
    double stop{0.0};
    int points{1};
    SweepScale scale{SweepScale::Linear};

    std::vector<double> values() const;
};

// Carries the JSON-pointer-style path of the offending field.
class SchemaError : public std::runtime_error {
public:
    SchemaError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

struct ScenarioConfig {
    ScenarioKind kind{ScenarioKind::Spectra};
    nlohmann::json params = nlohmann::json::object();   // every parameter, defaults filled in
    std::vector<SweepAxis> sweeps;
    std::string output_dir{"bathforge_out"};
    std::optional<std::uint64_t> seed;
    bool plot{false};
};

ScenarioConfig parse_config(const nlohmann::json& document);
ScenarioConfig parse_config_text(const std::string& text);
ScenarioConfig load_config(const std::string& path);

// Resolved configuration as a document; parse_config(to_json(c)) == c.
nlohmann::json to_json(const ScenarioConfig& config);

// SHA-256 of the resolved configuration's compact dump (output_dir excluded).
std::string config_hash(const ScenarioConfig& config);

} // namespace bathforge::cli
