#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "velsps/config.hpp"
#include "velsps/errors.hpp"
#include "velsps/experiments.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace velsps;

namespace {

struct CommonArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config, "Experiment configuration (JSON) or a run manifest")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", args.seed, "Override the configured seed");
    sub->add_option("--out", args.out, "Output directory (default: the configured output_dir)");
}

ExperimentConfig resolve(const CommonArgs& args) {
    ExperimentConfig cfg = load_config(args.config);
    if (args.seed) {
        cfg.seed = *args.seed;
        cfg.ga.seed = *args.seed;
    }
    if (args.out) cfg.output_dir = *args.out;
    return cfg;
}

void flatten(const json& j, const std::string& prefix, CsvTable& t) {
    if (j.is_object()) {
        for (const auto& item : j.items()) flatten(item.value(), prefix.empty() ? item.key() : prefix + "." + item.key(), t);
    } else {
        std::string v = j.is_string() ? j.get<std::string>() : j.dump();
        if (v.find(',') != std::string::npos) v = "\"" + v + "\"";
        t.add({prefix, v});
    }
}

void write_manifest(const ExperimentConfig& cfg, const std::string& verb, const std::vector<std::string>& outputs,
                    const json& notes) {
    json m;
    m["manifest_version"] = 1;
    m["artifact"] = "velsps";
    m["version"] = VELSPS_VERSION;
    m["verb"] = verb;
    m["seed"] = cfg.seed;
    m["config"] = config_to_json(cfg);
    m["outputs"] = outputs;
    m["notes"] = notes;
    write_file_atomic(fs::path(cfg.output_dir) / "manifest.json", m.dump(2) + "\n");
}

void emit(const ExperimentConfig& cfg, const std::string& name, const CsvTable& t) {
    write_file_atomic(fs::path(cfg.output_dir) / name, t.str());
}

int cmd_validate(const ExperimentConfig& cfg) {
    CsvTable t;
    t.header = {"key", "value"};
    json effective = config_to_json(cfg);
    effective.erase("output_dir");
    flatten(effective, "", t);
    emit(cfg, "effective_config.csv", t);
    write_manifest(cfg, "validate-config", {"effective_config.csv"}, json::object());
    std::cout << config_to_json(cfg).dump(2) << "\n";
    return 0;
}

int cmd_fig3(const ExperimentConfig& cfg) {
    Fig3Result r = run_fig3_metrics(cfg);
    emit(cfg, "fig3.csv", r.metrics);
    emit(cfg, "nsga2_history.csv", r.history);
    json notes;
    notes["reference_point"] = r.context.reference_point;
    notes["reference_front_size"] = r.context.reference_front.size();
    write_manifest(cfg, "fig3", {"fig3.csv", "nsga2_history.csv"}, notes);
    return 0;
}

json sweep_notes(const SweepResult& s) {
    json notes = json::array();
    for (const auto& p : s.points)
        notes.push_back({{"avg_speed", p.avg_speed},
                         {"lane_speeds", p.lane_speeds},
                         {"optimal_window", p.optimum.genome},
                         {"threshold_relaxed", p.optimum.relaxed}});
    return notes;
}

int cmd_fig4(const ExperimentConfig& cfg) {
    SweepResult s = run_sweep(cfg);
    emit(cfg, "fig4.csv", s.fig4);
    write_manifest(cfg, "fig4", {"fig4.csv"}, sweep_notes(s));
    return 0;
}

int cmd_fig5(const ExperimentConfig& cfg) {
    SweepResult s = run_sweep(cfg);
    emit(cfg, "fig5.csv", s.fig5);
    write_manifest(cfg, "fig5", {"fig5.csv"}, sweep_notes(s));
    return 0;
}

int cmd_oracle(const ExperimentConfig& cfg) {
    OracleReport rep = run_oracle_validation(cfg);
    emit(cfg, "oracle.csv", rep.table);
    json notes;
    notes["agreeing_configurations"] = rep.agreeing;
    notes["total_configurations"] = rep.rows.size();
    write_manifest(cfg, "oracle", {"oracle.csv"}, notes);
    std::cout << rep.table.str();
    std::cout << "agreeing configurations: " << rep.agreeing << "/" << rep.rows.size() << "\n";
    if (rep.agreeing != static_cast<int>(rep.rows.size())) std::cout << assumption_ledger(cfg.sps);
    return 0;
}

void error_line(const std::string& kind, const std::string& key, const std::string& message) {
    json e{{"error", kind}, {"message", message}};
    if (!key.empty()) e["key"] = key;
    std::cerr << e.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Velocity-adaptive SPS selection windows: experiments and oracles"};
    app.require_subcommand(1);
    CommonArgs args;
    struct Verb {
        const char* name;
        const char* help;
        int (*fn)(const ExperimentConfig&);
    };
    const Verb verbs[] = {
        {"validate-config", "Load, validate and echo the effective configuration", &cmd_validate},
        {"fig3", "NSGA-II quality metrics per generation", &cmd_fig3},
        {"fig4", "Optimal window per lane over the speed sweep", &cmd_fig4},
        {"fig5", "Objective sum of the optimum versus the fixed baseline window", &cmd_fig5},
        {"oracle", "Analytic collision/PRR model versus the SPS simulator", &cmd_oracle},
    };
    std::vector<std::pair<CLI::App*, const Verb*>> subs;
    for (const auto& v : verbs) {
        auto* sub = app.add_subcommand(v.name, v.help);
        add_common(sub, args);
        subs.emplace_back(sub, &v);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        error_line("usage", "", e.what());
        return 64;
    }
    try {
        for (const auto& [sub, verb] : subs)
            if (sub->parsed()) return verb->fn(resolve(args));
    } catch (const ConfigError& e) {
        error_line("config", e.key(), e.what());
        return 2;
    } catch (const std::exception& e) {
        error_line("runtime", "", e.what());
        return 1;
    }
    return 1;
}
