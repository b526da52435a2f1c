// bathforge.cpp: command-line entry point (run, reproduce, validate)

#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "bathforge/cli/config.hpp"
#include "bathforge/cli/presets.hpp"
#include "bathforge/cli/runner.hpp"

using namespace bathforge::cli;

namespace {

void print_manifest(const RunReport& r) {
    std::cout << "output: " << r.output_dir << "\n";
    for (const auto& a : r.artifacts) std::cout << "  " << a.sha256 << "  " << a.file << "\n";
    for (const auto& f : r.failures) std::cerr << "point " << f.index << " failed: " << f.message << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bathforge: bath spectroscopy, control and machines"};
    app.require_subcommand(1);
    int workers = 0;
    app.add_option("-j,--workers", workers, "worker threads (default: BATHFORGE_WORKERS or all cores)");

    std::string run_path, run_out;
    auto* run_cmd = app.add_subcommand("run", "execute a scenario configuration");
    run_cmd->add_option("config", run_path, "JSON configuration")->required();
    run_cmd->add_option("-o,--output-dir", run_out, "override the configured output directory");

    std::string figure, fig_out;
    auto* rep_cmd = app.add_subcommand("reproduce", "run a bundled figure preset and its checks");
    rep_cmd->add_option("figure", figure, "Fig2 | Fig3 | Fig7d | Fig16 | Fig17")->required();
    rep_cmd->add_option("-o,--output-dir", fig_out, "output directory (default: reproduce_<figure>)");

    std::string val_path;
    auto* val_cmd = app.add_subcommand("validate", "check a configuration against the scenario schema");
    val_cmd->add_option("config", val_path, "JSON configuration")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitSchema;
    }

    try {
        if (*val_cmd) {
            const auto cfg = load_config(val_path);
            std::cout << "valid " << kind_name(cfg.kind) << " scenario, config sha256 " << config_hash(cfg) << "\n";
            return kExitOk;
        }
        if (*run_cmd) {
            const auto cfg = load_config(run_path);
            RunOptions opts;
            if (!run_out.empty()) opts.output_dir = run_out;
            opts.workers = workers;
            const auto report = run(cfg, opts);
            print_manifest(report);
            return report.exit_code;
        }
        const auto id = parse_figure(figure);
        if (!id) {
            std::cerr << "unknown figure '" << figure << "' (expected Fig2, Fig3, Fig7d, Fig16 or Fig17)\n";
            return kExitSchema;
        }
        const std::string out = fig_out.empty() ? "reproduce_" + figure : fig_out;
        const auto report = reproduce_figure(*id, out, workers);
        for (const auto& r : report.runs) print_manifest(r);
        for (const auto& c : report.checks)
            std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : " (" + c.detail + ")")
                      << "\n";
        if (report.exit_code == kExitAcceptance) {
            for (const auto& c : report.checks)
                if (!c.pass) std::cerr << "acceptance failure: " << c.name << "\n";
        }
        return report.exit_code;
    } catch (const SchemaError& e) {
        std::cerr << "schema error at " << e.what() << "\n";
        return kExitSchema;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
}
