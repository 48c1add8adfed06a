#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace velsps {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    friend bool operator==(const Vec3&, const Vec3&) = default;
};

struct ScenarioConfig {
    int num_lanes = 4;
    std::vector<double> lane_speeds{22.0, 24.0, 26.0, 28.0};
    // Lateral offset per lane. Ignored unless use_lane_offsets is set.
    std::vector<double> lane_offsets{};
    bool use_lane_offsets = false;
    Vec3 rsu_position{250.0, 10.0, 5.0};
    double coverage_range = 500.0;
    double arrival_rate = 0.1;
    double max_adjacent_speed_gap = 4.0;
    double speed_min = 20.0;
    double speed_max = 30.0;

    // Throws ConfigError naming the offending key.
    void validate() const;
    double lateral_offset(int lane) const;
};

struct Vehicle {
    std::uint64_t id = 0;
    int lane = 0;
    double speed = 0.0;
    double entry_time = 0.0;
    double packet_rate = 10.0;
};

// Lane k sits 3.5 m * k from the reference line when offsets are enabled.
std::vector<double> standard_lane_offsets(int num_lanes);
Vec3 default_rsu_position(double coverage_range);

double residence_time(double v, double coverage_range);
Vec3 vehicle_position(double v, double t, double lateral_offset = 0.0);
double distance_to_rsu(const Vec3& vehicle_pos, const Vec3& rsu_pos);
std::vector<double> spawn_arrivals(double rate, double horizon, std::uint64_t seed);

// Vehicles for every lane over [0, horizon), each lane its own Poisson stream.
std::vector<Vehicle> spawn_vehicles(const ScenarioConfig& cfg, double horizon, double packet_rate,
                                    std::uint64_t seed);

// Lane speeds around an average, e.g. offsets {-3,-1,1,3}.
std::vector<double> lane_speeds_around(double average, std::span<const double> offsets);

}  // namespace velsps
