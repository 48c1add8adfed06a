#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "velsps/errors.hpp"
#include "velsps/scenario.hpp"

using namespace velsps;

TEST_CASE("residence time is coverage over speed") {
    CHECK(residence_time(25, 500) == doctest::Approx(20.0));
    CHECK(residence_time(1, 1) == 1.0);
    CHECK(residence_time(30, 600) == doctest::Approx(20.0));
    CHECK_THROWS_AS(residence_time(0, 500), DomainError);
    CHECK_THROWS_AS(residence_time(-1, 500), DomainError);
    CHECK_THROWS_AS(residence_time(25, 0), DomainError);
}

TEST_CASE("residence time strictly decreases with speed") {
    for (double r : {10.0, 500.0, 2000.0})
        for (double v = 0.5; v < 60.0; v += 0.5) CHECK(residence_time(v + 0.5, r) < residence_time(v, r));
}

TEST_CASE("vehicle position moves along the first axis") {
    CHECK(vehicle_position(25, 0) == Vec3{0, 0, 0});
    CHECK(vehicle_position(25, 2) == Vec3{50, 0, 0});
    CHECK(vehicle_position(20, 10) == Vec3{200, 0, 0});
    CHECK(vehicle_position(20, 10, 7.0) == Vec3{200, 7.0, 0});
    CHECK(vehicle_position(-20, 1).x == -20.0);
    CHECK_THROWS_AS(vehicle_position(20, -1), DomainError);
}

TEST_CASE("distance to the RSU") {
    CHECK(distance_to_rsu({0, 0, 0}, {0, 0, 0}) == 0.0);
    CHECK(distance_to_rsu({3, 4, 0}, {0, 0, 0}) == doctest::Approx(5.0));
    CHECK(distance_to_rsu({250, 0, 0}, {250, 10, 5}) == doctest::Approx(std::sqrt(125.0)));
    CHECK(default_rsu_position(500) == Vec3{250, 10, 5});
}

TEST_CASE("distance is symmetric and satisfies the triangle inequality") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1000, 1000);
    for (int i = 0; i < 2000; ++i) {
        Vec3 a{u(rng), u(rng), u(rng)}, b{u(rng), u(rng), u(rng)}, c{u(rng), u(rng), u(rng)};
        CHECK(distance_to_rsu(a, b) == distance_to_rsu(b, a));
        CHECK(distance_to_rsu(a, c) <= distance_to_rsu(a, b) + distance_to_rsu(b, c) + 1e-9);
        CHECK(distance_to_rsu(a, b) >= 0.0);
    }
}

TEST_CASE("Poisson arrivals") {
    CHECK(spawn_arrivals(0.0, 100, 1).empty());
    auto t = spawn_arrivals(0.1, 10000, 7);
    CHECK(std::fabs(static_cast<double>(t.size()) - 1000.0) <= 3.0 * std::sqrt(1000.0));
    CHECK(std::is_sorted(t.begin(), t.end()));
    CHECK(t.front() >= 0.0);
    CHECK(t.back() < 10000.0);
    CHECK(spawn_arrivals(0.1, 10000, 7) == t);
    CHECK(spawn_arrivals(0.1, 10000, 8) != t);
    CHECK_THROWS_AS(spawn_arrivals(-1, 10, 1), DomainError);
}

TEST_CASE("Poisson inter-arrival gaps have the exponential mean and variance") {
    auto t = spawn_arrivals(2.0, 50000, 11);
    double prev = 0.0, s = 0.0, s2 = 0.0;
    for (double x : t) {
        double g = x - prev;
        prev = x;
        s += g;
        s2 += g * g;
    }
    double n = static_cast<double>(t.size());
    double mean = s / n;
    double var = s2 / n - mean * mean;
    CHECK(std::fabs(mean - 0.5) < 3.0 * 0.5 / std::sqrt(n));
    CHECK(var == doctest::Approx(0.25).epsilon(0.03));
}

TEST_CASE("spawned vehicles carry their lane speed and are reproducible") {
    ScenarioConfig sc;
    auto v = spawn_vehicles(sc, 200, 10, 5);
    CHECK(!v.empty());
    for (const auto& x : v) {
        CHECK(x.speed == sc.lane_speeds[static_cast<std::size_t>(x.lane)]);
        CHECK(x.entry_time >= 0.0);
        CHECK(x.packet_rate > 0.0);
    }
    auto w = spawn_vehicles(sc, 200, 10, 5);
    REQUIRE(w.size() == v.size());
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(w[i].entry_time == v[i].entry_time);
}

TEST_CASE("scenario validation names the offending key") {
    ScenarioConfig sc;
    CHECK_NOTHROW(sc.validate());
    sc.lane_speeds = {20, 25, 26, 27};
    try {
        sc.validate();
        FAIL("expected gap violation");
    } catch (const ConfigError& e) {
        CHECK(e.key() == "scenario.lane_speeds");
    }
    sc = ScenarioConfig{};
    sc.lane_speeds = {19, 21, 23, 25};
    CHECK_THROWS_AS(sc.validate(), ConfigError);
    sc = ScenarioConfig{};
    sc.coverage_range = 0;
    CHECK_THROWS_AS(sc.validate(), ConfigError);
    sc = ScenarioConfig{};
    sc.lane_speeds = {-22, -24, 26, 28};
    CHECK_NOTHROW(sc.validate());
}

TEST_CASE("lane offsets are optional") {
    ScenarioConfig sc;
    CHECK(sc.lateral_offset(3) == 0.0);
    sc.use_lane_offsets = true;
    sc.lane_offsets = standard_lane_offsets(4);
    CHECK(sc.lateral_offset(3) == doctest::Approx(10.5));
}

TEST_CASE("lane speeds around an average") {
    std::vector<double> off{-3, -1, 1, 3};
    CHECK(lane_speeds_around(25, off) == std::vector<double>{22, 24, 26, 28});
}
