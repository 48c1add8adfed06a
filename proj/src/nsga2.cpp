#include "velsps/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "velsps/errors.hpp"

namespace velsps {

void GAConfig::validate() const {
    if (population_size < 4 || population_size % 2 != 0)
        throw ConfigError("ga.population_size", "must be even and >= 4");
    if (max_generations < 1) throw ConfigError("ga.max_generations", "must be >= 1");
    if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
        throw ConfigError("ga.crossover_rate", "must lie in [0, 1]");
    if (!(mutation_rate < 0.0 || mutation_rate <= 1.0))
        throw ConfigError("ga.mutation_rate", "must lie in [0, 1]");
    if (!(threshold > 0.0)) throw ConfigError("ga.threshold", "must be > 0");
}

double GAConfig::effective_mutation_rate(std::size_t genes) const {
    return mutation_rate < 0.0 ? 1.0 / static_cast<double>(genes) : mutation_rate;
}

std::vector<Individual> initialize(const GAConfig& cfg, std::size_t genes, Bounds b, Rng& rng) {
    if (b.lb > b.ub) throw DomainError("initialize: lower bound above upper bound");
    std::uniform_int_distribution<int> gene(b.lb, b.ub);
    std::vector<Individual> pop(static_cast<std::size_t>(cfg.population_size));
    for (auto& ind : pop) {
        ind.genome.resize(genes);
        for (auto& g : ind.genome) g = gene(rng);
    }
    return pop;
}

std::vector<Individual> initialize(const GAConfig& cfg, std::size_t genes, Bounds b) {
    Rng rng = make_rng(cfg.seed);
    return initialize(cfg, genes, b, rng);
}

std::pair<Genome, Genome> crossover(const Genome& a, const Genome& b, double rate, Rng& rng) {
    if (a.size() != b.size()) throw DomainError("crossover: parents differ in length");
    Genome c = a;
    Genome d = b;
    std::bernoulli_distribution go(rate);
    if (a.size() >= 2 && go(rng)) {
        std::uniform_int_distribution<std::size_t> cut(1, a.size() - 1);
        std::size_t k = cut(rng);
        for (std::size_t i = k; i < a.size(); ++i) std::swap(c[i], d[i]);
    }
    return {std::move(c), std::move(d)};
}

void mutate(Genome& g, double rate, Bounds b, Rng& rng) {
    std::bernoulli_distribution flip(rate);
    std::uniform_int_distribution<int> gene(b.lb, b.ub);
    for (auto& x : g)
        if (flip(rng)) x = gene(rng);
}

bool dominates(const Objectives& a, const Objectives& b) {
    bool strict = false;
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] > b[k]) return false;
        if (a[k] < b[k]) strict = true;
    }
    return strict;
}

std::vector<std::vector<std::size_t>> non_dominated_sort(const std::vector<Objectives>& objs) {
    const std::size_t n = objs.size();
    for (const auto& o : objs)
        for (double x : o)
            if (!std::isfinite(x)) throw DomainError("non_dominated_sort: non-finite objective");
    std::vector<std::vector<std::size_t>> dominated_by_me(n);
    std::vector<std::size_t> count(n, 0);
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p == q) continue;
            if (dominates(objs[p], objs[q]))
                dominated_by_me[p].push_back(q);
            else if (dominates(objs[q], objs[p]))
                ++count[p];
        }
        if (count[p] == 0) current.push_back(p);
    }
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (std::size_t p : current)
            for (std::size_t q : dominated_by_me[p])
                if (--count[q] == 0) next.push_back(q);
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

std::vector<double> crowding_distance(const std::vector<Objectives>& front) {
    const std::size_t n = front.size();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, 0.0);
    if (n <= 2) {
        std::fill(dist.begin(), dist.end(), inf);
        return dist;
    }
    const std::size_t m = front.front().size();
    std::vector<std::size_t> order(n);
    for (std::size_t k = 0; k < m; ++k) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return front[a][k] < front[b][k]; });
        double lo = front[order.front()][k];
        double hi = front[order.back()][k];
        dist[order.front()] = inf;
        dist[order.back()] = inf;
        if (hi == lo) continue;
        for (std::size_t i = 1; i + 1 < n; ++i)
            dist[order[i]] += (front[order[i + 1]][k] - front[order[i - 1]][k]) / (hi - lo);
    }
    return dist;
}

namespace {

bool crowded_better(const Individual& a, const Individual& b) {
    if (a.rank != b.rank) return a.rank < b.rank;
    if (a.crowding != b.crowding) return a.crowding > b.crowding;
    return a.genome < b.genome;
}

void assign_rank_and_crowding(std::vector<Individual>& pop, std::vector<std::vector<std::size_t>>& fronts) {
    std::vector<Objectives> objs;
    objs.reserve(pop.size());
    for (const auto& ind : pop) objs.push_back(ind.objectives);
    fronts = non_dominated_sort(objs);
    for (std::size_t r = 0; r < fronts.size(); ++r) {
        std::vector<Objectives> fo;
        for (std::size_t i : fronts[r]) fo.push_back(objs[i]);
        auto cd = crowding_distance(fo);
        for (std::size_t j = 0; j < fronts[r].size(); ++j) {
            pop[fronts[r][j]].rank = static_cast<int>(r);
            pop[fronts[r][j]].crowding = cd[j];
        }
    }
}

}  // namespace

std::vector<Individual> select_survivors(std::vector<Individual> merged, std::size_t m) {
    if (merged.size() < m) throw DomainError("select_survivors: fewer candidates than survivors");
    std::vector<std::vector<std::size_t>> fronts;
    assign_rank_and_crowding(merged, fronts);
    std::vector<Individual> out;
    out.reserve(m);
    for (auto& f : fronts) {
        if (out.size() >= m) break;
        std::sort(f.begin(), f.end(),
                  [&](std::size_t a, std::size_t b) { return crowded_better(merged[a], merged[b]); });
        for (std::size_t i : f) {
            if (out.size() >= m) break;
            out.push_back(merged[i]);
        }
    }
    return out;
}

PointSet first_front(const std::vector<Individual>& pop) {
    PointSet out;
    for (const auto& ind : pop)
        if (ind.rank == 0) out.push_back(ind.objectives);
    return out;
}

Point reference_point_from(const std::vector<Individual>& pop, double scale) {
    if (pop.empty()) throw DomainError("reference_point_from: empty population");
    Point ref(pop.front().objectives.size(), -std::numeric_limits<double>::infinity());
    for (const auto& ind : pop)
        for (std::size_t k = 0; k < ref.size(); ++k) ref[k] = std::max(ref[k], ind.objectives[k]);
    for (auto& r : ref) r *= scale;
    return ref;
}

namespace {

double objective_total(const Objectives& o) { return std::accumulate(o.begin(), o.end(), 0.0); }

bool feasible(const Individual& ind, double t) {
    return std::all_of(ind.objectives.begin(), ind.objectives.end(), [t](double f) { return f <= t; });
}

GenerationRecord measure(int generation, const std::vector<Individual>& pop, const Point& ref,
                         const PointSet* ref_front, bool with_metrics, const ThresholdFn& threshold) {
    GenerationRecord rec;
    rec.generation = generation;
    rec.best_sum = std::numeric_limits<double>::infinity();
    for (const auto& ind : pop) {
        rec.best_sum = std::min(rec.best_sum, objective_total(ind.objectives));
        if (feasible(ind, threshold(ind))) ++rec.feasible_count;
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    rec.hv = rec.gd = rec.igd = rec.spacing = nan;
    if (!with_metrics) return rec;
    PointSet front = first_front(pop);
    rec.hv = hypervolume_clipped(front, ref);
    if (ref_front != nullptr && !ref_front->empty()) {
        rec.gd = generational_distance(front, *ref_front);
        rec.igd = inverted_generational_distance(front, *ref_front);
    }
    std::sort(front.begin(), front.end());
    front.erase(std::unique(front.begin(), front.end()), front.end());
    rec.spacing = front.size() >= 2 ? spacing(front) : 0.0;
    return rec;
}

}  // namespace

RunResult run(const GAConfig& cfg, std::size_t genes, Bounds bounds, const Evaluator& evaluate,
              const RunOptions& options) {
    if (genes == 0) throw DomainError("run: genome length must be >= 1");
    Rng rng = make_rng(cfg.seed, 0x6E5A2ULL);
    const std::size_t m = static_cast<std::size_t>(cfg.population_size);
    const double pm = cfg.effective_mutation_rate(genes);
    ThresholdFn threshold = options.threshold;
    if (!threshold) {
        const double t = cfg.threshold;
        threshold = [t](const Individual&) { return t; };
    }

    RunResult res;
    std::vector<Individual> pop = initialize(cfg, genes, bounds, rng);
    for (auto& ind : pop) ind.objectives = evaluate(ind.genome);
    {
        std::vector<std::vector<std::size_t>> fronts;
        assign_rank_and_crowding(pop, fronts);
    }
    res.initial = pop;

    Point ref;
    const PointSet* ref_front = nullptr;
    if (options.metrics != nullptr) {
        ref = options.metrics->reference_point;
        ref_front = &options.metrics->reference_front;
    }
    if (ref.empty()) ref = reference_point_from(pop, 1.1);

    std::uniform_int_distribution<std::size_t> pick(0, m - 1);
    auto tournament = [&]() -> const Individual& {
        const Individual& a = pop[pick(rng)];
        const Individual& b = pop[pick(rng)];
        return crowded_better(b, a) ? b : a;
    };

    for (int gen = 1; gen <= cfg.max_generations; ++gen) {
        std::vector<Individual> merged = pop;
        merged.reserve(2 * m);
        while (merged.size() < 2 * m) {
            const Individual& pa = tournament();
            const Individual& pb = tournament();
            auto [c1, c2] = crossover(pa.genome, pb.genome, cfg.crossover_rate, rng);
            mutate(c1, pm, bounds, rng);
            mutate(c2, pm, bounds, rng);
            for (Genome* g : {&c1, &c2}) {
                Individual child;
                child.genome = std::move(*g);
                child.objectives = evaluate(child.genome);
                merged.push_back(std::move(child));
            }
        }
        pop = select_survivors(std::move(merged), m);
        res.history.push_back(measure(gen, pop, ref, ref_front, options.record_metrics, threshold));
    }
    res.population = std::move(pop);
    return res;
}

Optimum pick_optimum(const std::vector<Individual>& pop, const ThresholdFn& threshold) {
    if (pop.empty()) throw DomainError("pick_optimum: empty population");
    auto best_of = [&](bool require_feasible) -> const Individual* {
        const Individual* best = nullptr;
        double best_sum = 0.0;
        for (const auto& ind : pop) {
            if (require_feasible && !feasible(ind, threshold(ind))) continue;
            double s = objective_total(ind.objectives);
            if (best == nullptr || s < best_sum || (s == best_sum && ind.genome < best->genome)) {
                best = &ind;
                best_sum = s;
            }
        }
        return best;
    };
    Optimum o;
    const Individual* best = best_of(true);
    if (best == nullptr) {
        best = best_of(false);
        o.relaxed = true;
    }
    o.genome = best->genome;
    o.objectives = best->objectives;
    o.sum = objective_total(best->objectives);
    return o;
}

Optimum pick_optimum(const std::vector<Individual>& pop, double threshold) {
    return pick_optimum(pop, [threshold](const Individual&) { return threshold; });
}

}  // namespace velsps
