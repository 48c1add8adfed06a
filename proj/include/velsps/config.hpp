#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "velsps/channel.hpp"
#include "velsps/nsga2.hpp"
#include "velsps/scenario.hpp"
#include "velsps/sps_analytics.hpp"
#include "velsps/sps_sim.hpp"

namespace velsps {

struct MetricsConfig {
    double reference_scale = 1.1;
    int reference_run_factor = 5;
};

// Grid of small configurations for the analytic-versus-simulation comparison.
struct OracleConfig {
    double rri = 0.02;
    int numerology = 0;
    std::vector<int> num_agents{2, 3, 4};
    std::vector<int> num_subchannels{1, 2, 4};
    std::vector<int> windows{0, 4, 9};
    double keep_probability = 0.0;
    int rc_min = 5;
    int rc_max = 15;
    std::uint64_t num_events = 100000;
    SimMode mode = SimMode::FreeRunning;
};

struct ExperimentConfig {
    ScenarioConfig scenario;
    std::vector<double> lane_speed_offsets{-3.0, -1.0, 1.0, 3.0};
    double eval_fraction = 0.5;
    ChannelParams channel;
    SpsParams sps;
    GAConfig ga;
    bool relative_threshold = true;
    MetricsConfig metrics;
    std::vector<double> sweep{23.0, 24.0, 25.0, 26.0, 27.0};
    double fig3_avg_speed = 25.0;
    int baseline_window = 20;
    OracleConfig oracle;
    std::uint64_t seed = 1;
    std::string output_dir = "out";

    void validate() const;
    // Scenario with lane speeds built around the given average.
    ScenarioConfig scenario_at(double avg_speed) const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);
// Accepts a plain config or a run manifest (whose "config" member is used).
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace velsps
