// scenarios.hpp: per-kind parameter schemas and grid-point evaluators

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bathforge/cli/config.hpp"
#include "bathforge/table.hpp"
#include "json.hpp"

namespace bathforge::cli {

enum class ParamType { Number, Integer, Choice, Boolean };

struct ParamSpec {
    std::string name;
    ParamType type{ParamType::Number};
    nlohmann::json fallback;
    std::vector<std::string> choices;
};

class Params {
public:
    explicit Params(nlohmann::json values) : values_(std::move(values)) {}
    double number(const std::string& name) const;
    int integer(const std::string& name) const;
    std::int64_t integer64(const std::string& name) const;
    std::string text(const std::string& name) const;
    bool flag(const std::string& name) const;
    void set(const std::string& name, double value);
    const nlohmann::json& values() const { return values_; }

private:
    const nlohmann::json& at(const std::string& name) const;
    nlohmann::json values_;
};

struct PlotSpec {
    std::string title;
    std::string x;                 // column name (unit suffix optional)
    std::vector<std::string> y;
    std::string group;             // optional column splitting the rows into series
    bool log_x{false};
    bool log_y{false};
};

struct ScenarioDef {
    ScenarioKind kind{ScenarioKind::Spectra};
    std::vector<ParamSpec> params;
    bool uses_seed{false};
    // One grid point; the seed is derived from the configuration seed and the point index.
    std::function<Table(const Params&, std::uint64_t)> evaluate;
    // Optional record computed once from the unswept parameters.
    std::function<Table(const Params&)> summary;
    PlotSpec plot;

    const ParamSpec* find(const std::string& name) const;
};

const ScenarioDef& scenario(ScenarioKind kind);

} // namespace bathforge::cli
