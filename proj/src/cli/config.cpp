// config.cpp: scenario configuration parsing and validation

#include "bathforge/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "bathforge/cli/scenarios.hpp"
#include "bathforge/cli/sha256.hpp"

namespace bathforge::cli {

namespace {

using nlohmann::json;

const char* type_name(ParamType t) {
    switch (t) {
    case ParamType::Number: return "a finite number";
    case ParamType::Integer: return "an integer";
    case ParamType::Choice: return "a string";
    case ParamType::Boolean: return "a boolean";
    }
    return "?";
}

json check_param(const ParamSpec& spec, const json& value, const std::string& path) {
    switch (spec.type) {
    case ParamType::Number:
        if (!value.is_number() || !std::isfinite(value.get<double>()))
            throw SchemaError(path, std::string("expected ") + type_name(spec.type));
        return value;
    case ParamType::Integer:
        if (value.is_number_integer()) return value;
        if (value.is_number_float()) {
            const double v = value.get<double>();
            if (std::isfinite(v) && v == std::round(v) && std::abs(v) < 9e15) return json(std::llround(v));
        }
        throw SchemaError(path, std::string("expected ") + type_name(spec.type));
    case ParamType::Choice: {
        if (!value.is_string()) throw SchemaError(path, std::string("expected ") + type_name(spec.type));
        const auto s = value.get<std::string>();
        for (const auto& c : spec.choices)
            if (c == s) return value;
        std::string allowed;
        for (const auto& c : spec.choices) allowed += (allowed.empty() ? "" : ", ") + c;
        throw SchemaError(path, "unknown value '" + s + "' (expected one of " + allowed + ")");
    }
    case ParamType::Boolean:
        if (!value.is_boolean()) throw SchemaError(path, std::string("expected ") + type_name(spec.type));
        return value;
    }
    return value;
}

double require_number(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) throw SchemaError(path + "/" + key, "missing required field");
    const auto& v = obj.at(key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) throw SchemaError(path + "/" + key, "expected a number");
    return v.get<double>();
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& path) {
    for (const auto& [key, _] : obj.items())
        if (!known.count(key)) throw SchemaError(path + "/" + key, "unknown field");
}

} // namespace

const std::vector<ScenarioKind>& all_kinds() {
    static const std::vector<ScenarioKind> kinds{
        ScenarioKind::Spectra, ScenarioKind::Decohere, ScenarioKind::Diagnose, ScenarioKind::Estimate,
        ScenarioKind::Transfer, ScenarioKind::Cat, ScenarioKind::Rddi, ScenarioKind::Casimir,
        ScenarioKind::Engine, ScenarioKind::Zeno};
    return kinds;
}

const char* kind_name(ScenarioKind kind) {
    switch (kind) {
    case ScenarioKind::Spectra: return "Spectra";
    case ScenarioKind::Decohere: return "Decohere";
    case ScenarioKind::Diagnose: return "Diagnose";
    case ScenarioKind::Estimate: return "Estimate";
    case ScenarioKind::Transfer: return "Transfer";
    case ScenarioKind::Cat: return "Cat";
    case ScenarioKind::Rddi: return "Rddi";
    case ScenarioKind::Casimir: return "Casimir";
    case ScenarioKind::Engine: return "Engine";
    case ScenarioKind::Zeno: return "Zeno";
    }
    return "?";
}

std::optional<ScenarioKind> parse_kind(const std::string& name) {
    for (auto k : all_kinds())
        if (name == kind_name(k)) return k;
    return std::nullopt;
}

std::vector<double> SweepAxis::values() const {
    std::vector<double> out(static_cast<std::size_t>(points));
    if (points == 1) {
        out[0] = start;
        return out;
    }
    for (int i = 0; i < points; ++i) {
        const double f = static_cast<double>(i) / (points - 1);
        out[i] = scale == SweepScale::Linear ? start + f * (stop - start) : start * std::pow(stop / start, f);
    }
    out.back() = stop;
    return out;
}

ScenarioConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw SchemaError("/", "expected an object");
    reject_unknown(doc, {"scenario"}, "");
    if (!doc.contains("scenario")) throw SchemaError("/scenario", "missing required field");
    const json& s = doc.at("scenario");
    const std::string root = "/scenario";
    if (!s.is_object()) throw SchemaError(root, "expected an object");
    reject_unknown(s, {"kind", "params", "sweep", "output_dir", "seed", "plot"}, root);

    ScenarioConfig cfg;
    if (!s.contains("kind")) throw SchemaError(root + "/kind", "missing required field");
    if (!s.at("kind").is_string()) throw SchemaError(root + "/kind", "expected a string");
    const auto kind = parse_kind(s.at("kind").get<std::string>());
    if (!kind) {
        std::string allowed;
        for (auto k : all_kinds()) allowed += (allowed.empty() ? "" : ", ") + std::string(kind_name(k));
        throw SchemaError(root + "/kind",
                          "unknown scenario kind '" + s.at("kind").get<std::string>() + "' (expected one of " +
                              allowed + ")");
    }
    cfg.kind = *kind;
    const ScenarioDef& def = scenario(cfg.kind);

    json given = json::object();
    if (s.contains("params")) {
        given = s.at("params");
        if (!given.is_object()) throw SchemaError(root + "/params", "expected an object");
    }
    for (const auto& [key, value] : given.items()) {
        const ParamSpec* spec = def.find(key);
        if (!spec)
            throw SchemaError(root + "/params/" + key,
                              std::string("unknown parameter for scenario kind ") + kind_name(cfg.kind));
        cfg.params[key] = check_param(*spec, value, root + "/params/" + key);
    }
    for (const auto& spec : def.params)
        if (!cfg.params.contains(spec.name)) cfg.params[spec.name] = spec.fallback;

    if (s.contains("sweep")) {
        const json& sw = s.at("sweep");
        if (!sw.is_array()) throw SchemaError(root + "/sweep", "expected an array");
        std::set<std::string> seen;
        for (std::size_t i = 0; i < sw.size(); ++i) {
            const std::string path = root + "/sweep/" + std::to_string(i);
            const json& a = sw.at(i);
            if (!a.is_object()) throw SchemaError(path, "expected an object");
            reject_unknown(a, {"name", "start", "stop", "points", "scale"}, path);
            SweepAxis axis;
            if (!a.contains("name") || !a.at("name").is_string())
                throw SchemaError(path + "/name", "expected the name of a parameter");
            axis.name = a.at("name").get<std::string>();
            const ParamSpec* spec = def.find(axis.name);
            if (!spec)
                throw SchemaError(path + "/name", "'" + axis.name + "' is not a parameter of scenario kind " +
                                                      kind_name(cfg.kind));
            if (spec->type != ParamType::Number && spec->type != ParamType::Integer)
                throw SchemaError(path + "/name", "'" + axis.name + "' is not numeric and cannot be swept");
            if (!seen.insert(axis.name).second) throw SchemaError(path + "/name", "duplicate sweep axis");
            axis.start = require_number(a, "start", path);
            axis.stop = require_number(a, "stop", path);
            if (!a.contains("points") || !a.at("points").is_number_integer() || a.at("points").get<long long>() < 1 ||
                a.at("points").get<long long>() > 1000000)
                throw SchemaError(path + "/points", "expected an integer in [1, 1000000]");
            axis.points = a.at("points").get<int>();
            if (a.contains("scale")) {
                const json& sc = a.at("scale");
                if (sc == "linear") axis.scale = SweepScale::Linear;
                else if (sc == "log") axis.scale = SweepScale::Log;
                else throw SchemaError(path + "/scale", "expected \"linear\" or \"log\"");
            }
            if (axis.scale == SweepScale::Log && !(axis.start > 0.0 && axis.stop > 0.0))
                throw SchemaError(path, "log sweeps need positive start and stop");
            if (spec->type == ParamType::Integer) {
                for (double v : axis.values())
                    if (v != std::round(v))
                        throw SchemaError(path, "integer parameter '" + axis.name + "' would take non-integer values");
            }
            cfg.sweeps.push_back(axis);
        }
    }

    if (s.contains("output_dir")) {
        if (!s.at("output_dir").is_string() || s.at("output_dir").get<std::string>().empty())
            throw SchemaError(root + "/output_dir", "expected a non-empty string");
        cfg.output_dir = s.at("output_dir").get<std::string>();
    }
    if (s.contains("seed")) {
        const json& seed = s.at("seed");
        if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0))
            throw SchemaError(root + "/seed", "expected a non-negative integer");
        cfg.seed = seed.get<std::uint64_t>();
    }
    if (def.uses_seed && !cfg.seed)
        throw SchemaError(root + "/seed", std::string("required for scenario kind ") + kind_name(cfg.kind));
    if (s.contains("plot")) {
        if (!s.at("plot").is_boolean()) throw SchemaError(root + "/plot", "expected a boolean");
        cfg.plot = s.at("plot").get<bool>();
    }
    return cfg;
}

ScenarioConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError("/", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc);
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("/", "cannot read configuration file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

json to_json(const ScenarioConfig& c) {
    json s;
    s["kind"] = kind_name(c.kind);
    s["params"] = c.params;
    json sweeps = json::array();
    for (const auto& a : c.sweeps) {
        sweeps.push_back({{"name", a.name},
                          {"start", a.start},
                          {"stop", a.stop},
                          {"points", a.points},
                          {"scale", a.scale == SweepScale::Log ? "log" : "linear"}});
    }
    s["sweep"] = sweeps;
    s["output_dir"] = c.output_dir;
    if (c.seed) s["seed"] = *c.seed;
    s["plot"] = c.plot;
    return json{{"scenario", s}};
}

std::string config_hash(const ScenarioConfig& config) {
    json doc = to_json(config);
    doc["scenario"].erase("output_dir");
    return sha256_hex(doc.dump());
}

} // namespace bathforge::cli
