#include "velsps/config.hpp"

#include <fstream>
#include <set>

#include "velsps/errors.hpp"

namespace velsps {

using nlohmann::json;

namespace {

// Reads typed members of one JSON object and rejects keys nobody asked for.
class Section {
public:
    Section(const json& parent, const std::string& name, bool required) : name_(name) {
        if (!parent.contains(name)) {
            if (required) throw ConfigError(name, "missing section");
            obj_ = json::object();
            return;
        }
        obj_ = parent.at(name);
        if (!obj_.is_object()) throw ConfigError(name, "must be an object");
    }

    template <class T>
    void get(const std::string& key, T& out) {
        seen_.insert(key);
        if (!obj_.contains(key)) return;
        try {
            out = obj_.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(name_ + "." + key, std::string("wrong type: ") + e.what());
        }
    }

    void mark(const std::string& key) { seen_.insert(key); }
    bool has(const std::string& key) const { return obj_.contains(key) && !obj_.at(key).is_null(); }
    const json& raw(const std::string& key) {
        seen_.insert(key);
        return obj_.at(key);
    }

    void finish() const {
        for (const auto& item : obj_.items())
            if (!seen_.count(item.key())) throw ConfigError(name_ + "." + item.key(), "unknown key");
    }

private:
    std::string name_;
    json obj_;
    std::set<std::string> seen_;
};

}  // namespace

void ExperimentConfig::validate() const {
    channel.validate();
    sps.validate();
    ga.validate();
    if (lane_speed_offsets.size() != static_cast<std::size_t>(scenario.num_lanes))
        throw ConfigError("scenario.lane_speed_offsets", "expected one offset per lane");
    if (!(eval_fraction >= 0.0 && eval_fraction <= 1.0))
        throw ConfigError("scenario.eval_fraction", "must lie in [0, 1]");
    if (sweep.empty()) throw ConfigError("sweep.avg_speeds", "must not be empty");
    for (double v : sweep) {
        try {
            scenario_at(v).validate();
        } catch (const ConfigError& e) {
            throw ConfigError("sweep.avg_speeds", "average " + std::to_string(v) + ": " + e.what());
        }
    }
    try {
        scenario_at(fig3_avg_speed).validate();
    } catch (const ConfigError& e) {
        throw ConfigError("sweep.fig3_avg_speed", e.what());
    }
    if (baseline_window < sps.w_lb || baseline_window > sps.w_ub)
        throw ConfigError("baseline_window", "must lie within window_bounds");
    if (!(metrics.reference_scale >= 1.0)) throw ConfigError("metrics.reference_scale", "must be >= 1");
    if (metrics.reference_run_factor < 1) throw ConfigError("metrics.reference_run_factor", "must be >= 1");
    if (oracle.num_events < 1000) throw ConfigError("oracle.num_events", "must be >= 1000");
    if (oracle.num_agents.empty() || oracle.num_subchannels.empty() || oracle.windows.empty())
        throw ConfigError("oracle", "grid lists must not be empty");
    for (int n : oracle.num_agents)
        if (n < 1) throw ConfigError("oracle.num_agents", "must be >= 1");
    int s = 0;
    try {
        s = slots_per_rri(oracle.numerology, oracle.rri);
    } catch (const DomainError&) {
        throw ConfigError("oracle.rri", "1000 * 2^numerology * rri must be a positive integer");
    }
    for (int w : oracle.windows)
        if (w < 0 || 2 * w + 1 > s) throw ConfigError("oracle.windows", "window does not fit the period");
    for (int n : oracle.num_subchannels)
        if (n < 1) throw ConfigError("oracle.num_subchannels", "must be >= 1");
    if (!(oracle.keep_probability >= 0.0 && oracle.keep_probability <= 0.8))
        throw ConfigError("oracle.keep_probability", "must lie in [0, 0.8]");
    if (oracle.rc_min < 1 || oracle.rc_max < oracle.rc_min)
        throw ConfigError("oracle.rc_range", "need 1 <= rc_min <= rc_max");
}

ScenarioConfig ExperimentConfig::scenario_at(double avg_speed) const {
    ScenarioConfig sc = scenario;
    sc.lane_speeds = lane_speeds_around(avg_speed, lane_speed_offsets);
    return sc;
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("config", "top level must be an object");
    ExperimentConfig c;
    try {
        {
            Section s(j, "scenario", true);
            s.get("num_lanes", c.scenario.num_lanes);
            s.get("lane_speed_offsets", c.lane_speed_offsets);
            s.get("coverage_range", c.scenario.coverage_range);
            s.get("arrival_rate", c.scenario.arrival_rate);
            s.get("max_adjacent_speed_gap", c.scenario.max_adjacent_speed_gap);
            s.get("speed_min", c.scenario.speed_min);
            s.get("speed_max", c.scenario.speed_max);
            s.get("use_lane_offsets", c.scenario.use_lane_offsets);
            s.get("eval_fraction", c.eval_fraction);
            c.scenario.lane_offsets = standard_lane_offsets(c.scenario.num_lanes);
            s.get("lane_offsets", c.scenario.lane_offsets);
            c.scenario.rsu_position = default_rsu_position(c.scenario.coverage_range);
            if (s.has("rsu_position")) {
                auto v = s.raw("rsu_position").get<std::vector<double>>();
                if (v.size() != 3) throw ConfigError("scenario.rsu_position", "expected three coordinates");
                c.scenario.rsu_position = {v[0], v[1], v[2]};
            } else {
                s.mark("rsu_position");
            }
            s.finish();
        }
        {
            Section s(j, "channel", true);
            s.get("bandwidth", c.channel.bandwidth);
            s.get("tx_power", c.channel.tx_power);
            s.get("noise_power", c.channel.noise_power);
            s.get("path_loss_exponent", c.channel.path_loss_exponent);
            s.get("wavelength", c.channel.wavelength);
            s.get("step_interval", c.channel.step_interval);
            if (s.has("angle_cos")) c.channel.angle_cos = s.raw("angle_cos").get<double>();
            else s.mark("angle_cos");
            s.finish();
        }
        {
            Section s(j, "sps", true);
            s.get("rri", c.sps.rri);
            s.get("numerology", c.sps.numerology);
            s.get("num_subchannels", c.sps.num_subchannels);
            std::vector<int> wb{c.sps.w_lb, c.sps.w_ub};
            s.get("window_bounds", wb);
            if (wb.size() != 2) throw ConfigError("window_bounds", "expected [w_lb, w_ub]");
            c.sps.w_lb = wb[0];
            c.sps.w_ub = wb[1];
            s.get("keep_probability", c.sps.keep_probability);
            s.get("candidate_fraction", c.sps.candidate_fraction);
            s.get("sensing_window_ms", c.sps.sensing_window_ms);
            s.get("packet_rate", c.sps.packet_rate);
            std::string model{to_string(c.sps.collision_model)};
            s.get("collision_model", model);
            c.sps.collision_model = collision_model_from_string(model);
            s.finish();
        }
        {
            Section s(j, "ga", true);
            s.get("population_size", c.ga.population_size);
            s.get("max_generations", c.ga.max_generations);
            s.get("crossover_rate", c.ga.crossover_rate);
            if (s.has("mutation_rate")) c.ga.mutation_rate = s.raw("mutation_rate").get<double>();
            else s.mark("mutation_rate");
            s.get("threshold", c.ga.threshold);
            std::string mode = c.relative_threshold ? "relative" : "absolute";
            s.get("threshold_mode", mode);
            if (mode != "relative" && mode != "absolute")
                throw ConfigError("ga.threshold_mode", "must be 'relative' or 'absolute'");
            c.relative_threshold = mode == "relative";
            s.finish();
        }
        {
            Section s(j, "metrics", false);
            s.get("reference_scale", c.metrics.reference_scale);
            s.get("reference_run_factor", c.metrics.reference_run_factor);
            s.finish();
        }
        {
            Section s(j, "sweep", true);
            s.get("avg_speeds", c.sweep);
            s.get("fig3_avg_speed", c.fig3_avg_speed);
            s.finish();
        }
        {
            Section s(j, "oracle", false);
            s.get("rri", c.oracle.rri);
            s.get("numerology", c.oracle.numerology);
            s.get("num_agents", c.oracle.num_agents);
            s.get("num_subchannels", c.oracle.num_subchannels);
            s.get("windows", c.oracle.windows);
            s.get("keep_probability", c.oracle.keep_probability);
            std::vector<int> rc{c.oracle.rc_min, c.oracle.rc_max};
            s.get("rc_range", rc);
            if (rc.size() != 2) throw ConfigError("oracle.rc_range", "expected [rc_min, rc_max]");
            c.oracle.rc_min = rc[0];
            c.oracle.rc_max = rc[1];
            s.get("num_events", c.oracle.num_events);
            std::string mode{to_string(c.oracle.mode)};
            s.get("mode", mode);
            c.oracle.mode = sim_mode_from_string(mode);
            s.finish();
        }
        if (!j.contains("baseline_window")) throw ConfigError("baseline_window", "missing key");
        c.baseline_window = j.at("baseline_window").get<int>();
        if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
        c.ga.seed = c.seed;
        static const std::set<std::string> top{"scenario", "channel", "sps",  "ga",   "metrics",     "sweep",
                                               "oracle",   "seed",    "output_dir", "baseline_window"};
        for (const auto& item : j.items())
            if (!top.count(item.key())) throw ConfigError(item.key(), "unknown key");
    } catch (const json::exception& e) {
        throw ConfigError("config", std::string("malformed value: ") + e.what());
    }
    c.validate();
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    const auto& sc = c.scenario;
    j["scenario"] = {{"num_lanes", sc.num_lanes},
                     {"lane_speed_offsets", c.lane_speed_offsets},
                     {"coverage_range", sc.coverage_range},
                     {"arrival_rate", sc.arrival_rate},
                     {"max_adjacent_speed_gap", sc.max_adjacent_speed_gap},
                     {"speed_min", sc.speed_min},
                     {"speed_max", sc.speed_max},
                     {"use_lane_offsets", sc.use_lane_offsets},
                     {"lane_offsets", sc.lane_offsets},
                     {"rsu_position", {sc.rsu_position.x, sc.rsu_position.y, sc.rsu_position.z}},
                     {"eval_fraction", c.eval_fraction}};
    j["channel"] = {{"bandwidth", c.channel.bandwidth},
                    {"tx_power", c.channel.tx_power},
                    {"noise_power", c.channel.noise_power},
                    {"path_loss_exponent", c.channel.path_loss_exponent},
                    {"wavelength", c.channel.wavelength},
                    {"step_interval", c.channel.step_interval},
                    {"angle_cos", c.channel.angle_cos ? json(*c.channel.angle_cos) : json(nullptr)}};
    j["sps"] = {{"rri", c.sps.rri},
                {"numerology", c.sps.numerology},
                {"num_subchannels", c.sps.num_subchannels},
                {"window_bounds", {c.sps.w_lb, c.sps.w_ub}},
                {"keep_probability", c.sps.keep_probability},
                {"candidate_fraction", c.sps.candidate_fraction},
                {"sensing_window_ms", c.sps.sensing_window_ms},
                {"packet_rate", c.sps.packet_rate},
                {"collision_model", std::string(to_string(c.sps.collision_model))}};
    j["ga"] = {{"population_size", c.ga.population_size},
               {"max_generations", c.ga.max_generations},
               {"crossover_rate", c.ga.crossover_rate},
               {"mutation_rate", c.ga.mutation_rate < 0.0 ? json(nullptr) : json(c.ga.mutation_rate)},
               {"threshold", c.ga.threshold},
               {"threshold_mode", c.relative_threshold ? "relative" : "absolute"}};
    j["metrics"] = {{"reference_scale", c.metrics.reference_scale},
                    {"reference_run_factor", c.metrics.reference_run_factor}};
    j["sweep"] = {{"avg_speeds", c.sweep}, {"fig3_avg_speed", c.fig3_avg_speed}};
    j["oracle"] = {{"rri", c.oracle.rri},
                   {"numerology", c.oracle.numerology},
                   {"num_agents", c.oracle.num_agents},
                   {"num_subchannels", c.oracle.num_subchannels},
                   {"windows", c.oracle.windows},
                   {"keep_probability", c.oracle.keep_probability},
                   {"rc_range", {c.oracle.rc_min, c.oracle.rc_max}},
                   {"num_events", c.oracle.num_events},
                   {"mode", std::string(to_string(c.oracle.mode))}};
    j["baseline_window"] = c.baseline_window;
    j["seed"] = c.seed;
    j["output_dir"] = c.output_dir;
    return j;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("config", "cannot open " + path.string());
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw ConfigError("config", std::string("parse error: ") + e.what());
    }
    if (j.is_object() && j.contains("config") && j.contains("manifest_version")) return config_from_json(j.at("config"));
    return config_from_json(j);
}

}  // namespace velsps
