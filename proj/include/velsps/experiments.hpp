#pragma once

#include <string>
#include <vector>

#include "velsps/config.hpp"
#include "velsps/csv.hpp"
#include "velsps/nsga2.hpp"
#include "velsps/sps_sim.hpp"

namespace velsps {

// The optimisation problem at one average speed.
struct LaneProblem {
    ScenarioConfig scenario;
    FairnessInputs inputs;
    Bounds bounds;
    Evaluator evaluate;
    ThresholdFn threshold;
};

LaneProblem make_problem(const ExperimentConfig& cfg, double avg_speed);

struct SweepPoint {
    double avg_speed = 0.0;
    std::vector<double> lane_speeds;
    Optimum optimum;
    double baseline_sum = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    CsvTable fig4;  // avg_speed,lane,optimal_window
    CsvTable fig5;  // avg_speed,scheme,objective_sum
};

SweepResult run_sweep(const ExperimentConfig& cfg);
CsvTable run_fig4_sweep(const ExperimentConfig& cfg);
CsvTable run_fig5_comparison(const ExperimentConfig& cfg);

struct Fig3Result {
    RunResult run;
    MetricContext context;   // reference point used and reference front
    CsvTable metrics;        // generation,HV,GD,IGD,spacing
    CsvTable history;        // generation,HV,IGD,GD,spacing,best_sum,feasible_count
};

Fig3Result run_fig3_metrics(const ExperimentConfig& cfg);

struct OracleRow {
    int agents = 0;
    int num_subchannels = 0;
    int window = 0;
    double analytic_collision = 0.0;  // NaN when the model rejects the configuration
    OracleRun sim;
    double analytic_prr = 0.0;
    bool collision_ok = false;
    bool prr_ok = false;
};

struct OracleReport {
    std::vector<OracleRow> rows;
    CsvTable table;
    int agreeing = 0;  // rows where both collision and PRR agree
};

// Tolerances of the comparison.
inline constexpr double kCollisionRelTol = 0.15;
inline constexpr double kCollisionAbsTol = 0.005;
inline constexpr double kPrrAbsTol = 0.02;

bool collision_agrees(double analytic, double simulated);
bool prr_agrees(double analytic, double simulated);

OracleReport run_oracle_validation(const ExperimentConfig& cfg);

// Human-readable description of the collision-model constants in use.
std::string assumption_ledger(const SpsParams& sps);

}  // namespace velsps
