#include "velsps/scenario.hpp"

#include <cmath>
#include <string>

#include "velsps/errors.hpp"
#include "velsps/rng.hpp"

namespace velsps {

void ScenarioConfig::validate() const {
    if (num_lanes < 1) throw ConfigError("scenario.num_lanes", "must be >= 1");
    if (static_cast<int>(lane_speeds.size()) != num_lanes)
        throw ConfigError("scenario.lane_speeds", "expected one speed per lane");
    if (use_lane_offsets && static_cast<int>(lane_offsets.size()) != num_lanes)
        throw ConfigError("scenario.lane_offsets", "expected one offset per lane");
    if (!(coverage_range > 0.0)) throw ConfigError("scenario.coverage_range", "must be > 0");
    if (!(arrival_rate >= 0.0)) throw ConfigError("scenario.arrival_rate", "must be >= 0");
    if (!(speed_min > 0.0) || !(speed_max >= speed_min))
        throw ConfigError("scenario.speed_range", "need 0 < speed_min <= speed_max");
    for (double v : lane_speeds) {
        double s = std::fabs(v);
        if (!(s > 0.0)) throw ConfigError("scenario.lane_speeds", "speeds must be non-zero");
        if (s < speed_min || s > speed_max)
            throw ConfigError("scenario.lane_speeds",
                              "speed " + std::to_string(s) + " outside [speed_min, speed_max]");
    }
    for (int k = 1; k < num_lanes; ++k) {
        double gap = std::fabs(std::fabs(lane_speeds[k]) - std::fabs(lane_speeds[k - 1]));
        if (gap > max_adjacent_speed_gap + 1e-12)
            throw ConfigError("scenario.lane_speeds", "adjacent lanes " + std::to_string(k - 1) +
                                                          "/" + std::to_string(k) +
                                                          " exceed max_adjacent_speed_gap");
    }
}

double ScenarioConfig::lateral_offset(int lane) const {
    if (!use_lane_offsets) return 0.0;
    return lane_offsets.at(static_cast<std::size_t>(lane));
}

std::vector<double> standard_lane_offsets(int num_lanes) {
    std::vector<double> out(static_cast<std::size_t>(num_lanes));
    for (int k = 0; k < num_lanes; ++k) out[static_cast<std::size_t>(k)] = 3.5 * k;
    return out;
}

Vec3 default_rsu_position(double coverage_range) { return {coverage_range / 2.0, 10.0, 5.0}; }

double residence_time(double v, double coverage_range) {
    if (!(v > 0.0)) throw DomainError("residence_time: speed must be > 0");
    if (!(coverage_range > 0.0)) throw DomainError("residence_time: coverage range must be > 0");
    return coverage_range / v;
}

Vec3 vehicle_position(double v, double t, double lateral_offset) {
    if (!(t >= 0.0)) throw DomainError("vehicle_position: time must be >= 0");
    return {v * t, lateral_offset, 0.0};
}

double distance_to_rsu(const Vec3& a, const Vec3& b) {
    double dx = a.x - b.x;
    double dy = a.y - b.y;
    double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

std::vector<double> spawn_arrivals(double rate, double horizon, std::uint64_t seed) {
    if (!(rate >= 0.0)) throw DomainError("spawn_arrivals: rate must be >= 0");
    if (!(horizon > 0.0)) throw DomainError("spawn_arrivals: horizon must be > 0");
    std::vector<double> times;
    if (rate == 0.0) return times;
    Rng rng = make_rng(seed);
    std::exponential_distribution<double> gap(rate);
    double t = gap(rng);
    while (t < horizon) {
        times.push_back(t);
        t += gap(rng);
    }
    return times;
}

std::vector<Vehicle> spawn_vehicles(const ScenarioConfig& cfg, double horizon, double packet_rate,
                                    std::uint64_t seed) {
    if (!(packet_rate > 0.0)) throw DomainError("spawn_vehicles: packet rate must be > 0");
    std::vector<Vehicle> out;
    std::uint64_t next_id = 0;
    for (int lane = 0; lane < cfg.num_lanes; ++lane) {
        auto times = spawn_arrivals(cfg.arrival_rate, horizon, seed + 0x9E3779B97F4A7C15ULL * (lane + 1));
        for (double t : times) {
            out.push_back({next_id++, lane, cfg.lane_speeds[static_cast<std::size_t>(lane)], t, packet_rate});
        }
    }
    return out;
}

std::vector<double> lane_speeds_around(double average, std::span<const double> offsets) {
    std::vector<double> out;
    out.reserve(offsets.size());
    for (double o : offsets) out.push_back(average + o);
    return out;
}

}  // namespace velsps
