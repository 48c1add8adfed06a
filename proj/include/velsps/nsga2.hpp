#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "velsps/moo_metrics.hpp"
#include "velsps/rng.hpp"

namespace velsps {

using Genome = std::vector<int>;
using Objectives = std::vector<double>;

struct Individual {
    Genome genome;
    Objectives objectives;
    int rank = 0;
    double crowding = 0.0;
};

struct Bounds {
    int lb = 0;
    int ub = 0;
};

struct GAConfig {
    int population_size = 100;
    int max_generations = 100;
    double crossover_rate = 0.9;
    double mutation_rate = -1.0;  // negative: 1 / number of genes
    double threshold = 0.1;
    std::uint64_t seed = 1;

    void validate() const;
    double effective_mutation_rate(std::size_t genes) const;
};

using Evaluator = std::function<Objectives(const Genome&)>;
// Per-individual feasibility threshold: every objective must be <= this value.
using ThresholdFn = std::function<double(const Individual&)>;

std::vector<Individual> initialize(const GAConfig& cfg, std::size_t genes, Bounds bounds, Rng& rng);
std::vector<Individual> initialize(const GAConfig& cfg, std::size_t genes, Bounds bounds);
std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, double rate, Rng& rng);
void mutate(Genome& g, double rate, Bounds bounds, Rng& rng);

bool dominates(const Objectives& a, const Objectives& b);
// Fronts as index lists into objs, best front first. Members keep input order.
std::vector<std::vector<std::size_t>> non_dominated_sort(const std::vector<Objectives>& objs);
std::vector<double> crowding_distance(const std::vector<Objectives>& front);
// Ranks and crowds merged, then keeps m of them.
std::vector<Individual> select_survivors(std::vector<Individual> merged, std::size_t m);

struct GenerationRecord {
    int generation = 0;
    double hv = 0.0;
    double igd = 0.0;
    double gd = 0.0;
    double spacing = 0.0;
    double best_sum = 0.0;
    int feasible_count = 0;
};

struct RunResult {
    std::vector<Individual> initial;
    std::vector<Individual> population;
    std::vector<GenerationRecord> history;
};

struct RunOptions {
    // Reference point and front for the quality metrics. Without a reference point
    // HV is taken against 1.1 x the initial population's per-objective maximum.
    const MetricContext* metrics = nullptr;
    bool record_metrics = true;
    ThresholdFn threshold;  // defaults to the constant GAConfig::threshold
};

RunResult run(const GAConfig& cfg, std::size_t genes, Bounds bounds, const Evaluator& evaluate,
              const RunOptions& options = {});

// Objective vectors of the first front of a population.
PointSet first_front(const std::vector<Individual>& pop);
Point reference_point_from(const std::vector<Individual>& pop, double scale = 1.1);

struct Optimum {
    Genome genome;
    Objectives objectives;
    double sum = 0.0;
    bool relaxed = false;  // no individual met the threshold
};

Optimum pick_optimum(const std::vector<Individual>& pop, double threshold);
Optimum pick_optimum(const std::vector<Individual>& pop, const ThresholdFn& threshold);

}  // namespace velsps
