#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

#include "oracles/oracles.hpp"
#include "velsps/errors.hpp"
#include "velsps/nsga2.hpp"

using namespace velsps;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

std::vector<Objectives> random_points(std::size_t n, std::size_t m, std::uint64_t seed, bool integer = false) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> ui(0, 6);
    std::vector<Objectives> pts(n, Objectives(m));
    for (auto& p : pts)
        for (auto& x : p) x = integer ? ui(rng) : u(rng);
    return pts;
}

std::vector<Individual> random_population(std::size_t n, std::size_t genes, std::size_t m, std::uint64_t seed) {
    auto objs = random_points(n, m, seed, seed % 2 == 0);
    std::mt19937_64 rng(seed + 1000);
    std::uniform_int_distribution<int> g(0, 9);
    std::vector<Individual> pop(n);
    for (std::size_t i = 0; i < n; ++i) {
        pop[i].genome.resize(genes);
        for (auto& x : pop[i].genome) x = g(rng);
        pop[i].objectives = objs[i];
    }
    return pop;
}

}  // namespace

TEST_CASE("initialize") {
    GAConfig cfg;
    cfg.population_size = 20;
    auto a = initialize(cfg, 4, {7, 7});
    for (auto& ind : a) CHECK(ind.genome == Genome{7, 7, 7, 7});
    auto b = initialize(cfg, 4, {5, 49});
    auto c = initialize(cfg, 4, {5, 49});
    REQUIRE(b.size() == 20);
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(b[i].genome == c[i].genome);
    CHECK_THROWS_AS(initialize(cfg, 4, {9, 5}), DomainError);
}

TEST_CASE("initialized genes have the uniform mean") {
    GAConfig cfg;
    cfg.population_size = 10000;
    cfg.seed = 77;
    auto pop = initialize(cfg, 4, {5, 49});
    const double range = 45.0;
    const double sd = std::sqrt((range * range - 1.0) / 12.0);
    for (std::size_t k = 0; k < 4; ++k) {
        double s = 0.0;
        for (auto& ind : pop) {
            CHECK(ind.genome[k] >= 5);
            CHECK(ind.genome[k] <= 49);
            s += ind.genome[k];
        }
        double mean = s / pop.size();
        CHECK(std::fabs(mean - 27.0) <= 3.0 * sd / std::sqrt(10000.0));
    }
}

TEST_CASE("crossover") {
    Rng rng = make_rng(1);
    Genome a{1, 2, 3, 4}, b{5, 6, 7, 8};
    for (int k = 0; k < 100; ++k) {
        auto [c, d] = crossover(a, b, 0.0, rng);
        CHECK(c == a);
        CHECK(d == b);
        auto [e, f] = crossover(a, a, 1.0, rng);
        CHECK(e == a);
        CHECK(f == a);
    }
    CHECK_THROWS_AS(crossover(a, Genome{1}, 0.5, rng), DomainError);
}

TEST_CASE("crossover preserves the multiset of genes at every locus") {
    Rng rng = make_rng(2);
    std::mt19937_64 g(3);
    std::uniform_int_distribution<int> u(5, 49);
    bool any_exchange = false;
    for (int t = 0; t < 2000; ++t) {
        Genome a(4), b(4);
        for (auto& x : a) x = u(g);
        for (auto& x : b) x = u(g);
        auto [c, d] = crossover(a, b, 0.9, rng);
        for (std::size_t k = 0; k < 4; ++k) {
            std::multiset<int> before{a[k], b[k]}, after{c[k], d[k]};
            CHECK(before == after);
        }
        any_exchange = any_exchange || c != a;
    }
    CHECK(any_exchange);
}

TEST_CASE("mutation") {
    Rng rng = make_rng(4);
    Genome g{5, 10, 20, 49};
    Genome h = g;
    mutate(h, 0.0, {5, 49}, rng);
    CHECK(h == g);
    mutate(h, 1.0, {12, 12}, rng);
    CHECK(h == Genome{12, 12, 12, 12});
}

TEST_CASE("mutation change rate accounts for redraws that hit the old value") {
    Rng rng = make_rng(5);
    const int trials = 10000;
    const Bounds b{5, 14};
    int changed = 0, genes = 0;
    for (int t = 0; t < trials; ++t) {
        Genome g{5, 9, 14, 7};
        Genome h = g;
        mutate(h, 0.1, b, rng);
        for (std::size_t k = 0; k < g.size(); ++k) {
            changed += h[k] != g[k];
            CHECK(h[k] >= b.lb);
            CHECK(h[k] <= b.ub);
        }
        genes += static_cast<int>(g.size());
    }
    const double p = 0.1 * (1.0 - 1.0 / 10.0);
    const double sd = std::sqrt(p * (1 - p) / genes);
    CHECK(std::fabs(static_cast<double>(changed) / genes - p) <= 3.0 * sd);
}

TEST_CASE("non-dominated sort on hand cases") {
    auto f = non_dominated_sort({{1, 1}, {2, 2}});
    REQUIRE(f.size() == 2);
    CHECK(f[0] == std::vector<std::size_t>{0});
    CHECK(f[1] == std::vector<std::size_t>{1});
    auto g = non_dominated_sort({{1, 2}, {2, 1}});
    REQUIRE(g.size() == 1);
    CHECK(g[0].size() == 2);
    CHECK_THROWS_AS(non_dominated_sort({{1, std::nan("")}}), DomainError);
    CHECK_THROWS_AS(non_dominated_sort({{1, kInf}}), DomainError);
}

TEST_CASE("non-dominated sort matches brute-force layer peeling") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto pts = random_points(200, 3, seed, seed % 3 == 0);
        auto fronts = non_dominated_sort(pts);
        auto want = oracle::brute_ranks(pts);
        std::vector<int> got(pts.size(), -1);
        std::size_t total = 0;
        for (std::size_t r = 0; r < fronts.size(); ++r) {
            for (auto i : fronts[r]) {
                CHECK(got[i] == -1);
                got[i] = static_cast<int>(r);
            }
            total += fronts[r].size();
        }
        CHECK(total == pts.size());
        CHECK(got == want);
        for (std::size_t r = 0; r + 1 < fronts.size(); ++r)
            for (auto q : fronts[r + 1]) {
                bool dominated = false;
                for (auto p : fronts[r]) dominated = dominated || dominates(pts[p], pts[q]);
                CHECK(dominated);
            }
    }
}

TEST_CASE("crowding distance hand cases") {
    auto one = crowding_distance({{1, 2}});
    CHECK(one == std::vector<double>{kInf});
    auto two = crowding_distance({{1, 2}, {2, 1}});
    CHECK(two == std::vector<double>{kInf, kInf});
    auto three = crowding_distance({{0, 2}, {1, 1}, {2, 0}});
    CHECK(three[0] == kInf);
    CHECK(three[1] == 2.0);
    CHECK(three[2] == kInf);
    auto dup = crowding_distance({{1, 1}, {1, 1}, {1, 1}, {1, 1}});
    for (double d : dup) {
        CHECK(!std::isnan(d));
        CHECK(d >= 0.0);
    }
}

TEST_CASE("crowding distance matches the definition on random fronts") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto pts = random_points(30, 4, seed + 100, seed % 2 == 0);
        auto got = crowding_distance(pts);
        auto want = oracle::brute_crowding(pts);
        for (std::size_t i = 0; i < pts.size(); ++i) CHECK(got[i] == want[i]);
    }
}

TEST_CASE("select_survivors hand cases") {
    std::vector<Individual> pop(4);
    pop[0] = {{1}, {0, 2}, 0, 0};
    pop[1] = {{2}, {1, 1}, 0, 0};
    pop[2] = {{3}, {2, 0}, 0, 0};
    pop[3] = {{4}, {3, 3}, 0, 0};
    auto s = select_survivors(pop, 3);
    std::set<Genome> kept;
    for (auto& x : s) kept.insert(x.genome);
    CHECK(kept == std::set<Genome>{{1}, {2}, {3}});
    auto one = select_survivors(pop, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].rank == 0);
    CHECK(one[0].crowding == kInf);
    CHECK(one[0].genome == Genome{1});
    CHECK_THROWS_AS(select_survivors(pop, 5), DomainError);
}

TEST_CASE("select_survivors matches a brute-force selection rule") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto pop = random_population(60, 3, 2 + seed % 3, seed);
        std::vector<oracle::Cand> cands;
        for (auto& ind : pop) cands.push_back({ind.genome, ind.objectives});
        for (std::size_t m : {1, 7, 30, 59}) {
            auto got = select_survivors(pop, m);
            std::vector<std::vector<int>> genomes;
            for (auto& x : got) genomes.push_back(x.genome);
            std::sort(genomes.begin(), genomes.end());
            CHECK(genomes == oracle::brute_survivors(cands, m));
        }
    }
}

TEST_CASE("pick_optimum hand cases") {
    std::vector<Individual> pop(3);
    pop[0] = {{1}, {0.5, 0.5}, 0, 0};
    pop[1] = {{2}, {0.1, 0.2}, 0, 0};
    pop[2] = {{3}, {0.0, 0.25}, 0, 0};
    auto o = pick_optimum(pop, 0.21);
    CHECK(o.genome == Genome{2});
    CHECK(!o.relaxed);
    auto all = pick_optimum(pop, kInf);
    CHECK(all.genome == Genome{3});
    auto none = pick_optimum(pop, 0.01);
    CHECK(none.relaxed);
    CHECK(none.genome == Genome{3});
    CHECK_THROWS_AS(pick_optimum(std::vector<Individual>{}, 1.0), DomainError);
}

TEST_CASE("pick_optimum matches an exhaustive filter-and-scan") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto pop = random_population(80, 3, 4, seed);
        std::vector<oracle::Cand> cands;
        std::vector<double> maxes;
        for (auto& ind : pop) {
            cands.push_back({ind.genome, ind.objectives});
            maxes.push_back(*std::max_element(ind.objectives.begin(), ind.objectives.end()));
        }
        std::nth_element(maxes.begin(), maxes.begin() + maxes.size() / 2, maxes.end());
        for (double thr : {maxes[maxes.size() / 2], 0.0, -1.0, kInf}) {
            bool relaxed = false;
            auto want = oracle::brute_pick(cands, thr, &relaxed);
            auto got = pick_optimum(pop, thr);
            CHECK(got.genome == want);
            CHECK(got.relaxed == relaxed);
        }
    }
}

namespace {

Objectives sphere(const Genome& g) {
    Objectives o;
    for (std::size_t i = 0; i < g.size(); ++i) {
        double a = g[i] - 10.0, b = g[(i + 1) % g.size()] - 30.0;
        o.push_back(a * a + 0.5 * b * b);
    }
    return o;
}

}  // namespace

TEST_CASE("run with zero generations returns the initial population") {
    GAConfig cfg;
    cfg.population_size = 10;
    cfg.max_generations = 0;
    auto r = run(cfg, 3, {5, 49}, sphere);
    CHECK(r.history.empty());
    REQUIRE(r.population.size() == r.initial.size());
    Rng rng = make_rng(cfg.seed, 0x6E5A2ULL);
    auto fresh = initialize(cfg, 3, {5, 49}, rng);
    for (std::size_t i = 0; i < r.population.size(); ++i) {
        CHECK(r.population[i].genome == r.initial[i].genome);
        CHECK(r.population[i].genome == fresh[i].genome);
    }
}

TEST_CASE("run is elitist per objective, stays in bounds and is deterministic") {
    GAConfig cfg;
    cfg.population_size = 20;
    cfg.max_generations = 1;
    const Bounds b{5, 49};
    std::vector<Individual> pop;
    std::vector<double> prev_best;
    for (int gen = 1; gen <= 30; ++gen) {
        cfg.max_generations = gen;
        auto r = run(cfg, 4, b, sphere);
        REQUIRE(r.history.size() == static_cast<std::size_t>(gen));
        std::vector<double> best(4, kInf);
        for (auto& ind : r.population) {
            for (int x : ind.genome) {
                CHECK(x >= b.lb);
                CHECK(x <= b.ub);
            }
            for (std::size_t k = 0; k < 4; ++k) best[k] = std::min(best[k], ind.objectives[k]);
        }
        if (!prev_best.empty())
            for (std::size_t k = 0; k < 4; ++k) CHECK(best[k] <= prev_best[k]);
        prev_best = best;
    }
    auto a = run(cfg, 4, b, sphere);
    auto c = run(cfg, 4, b, sphere);
    for (std::size_t i = 0; i < a.population.size(); ++i) CHECK(a.population[i].genome == c.population[i].genome);
    for (std::size_t g = 0; g < a.history.size(); ++g) {
        CHECK(a.history[g].hv == c.history[g].hv);
        CHECK(a.history[g].best_sum == c.history[g].best_sum);
    }
}

TEST_CASE("single-objective run never loses its best") {
    GAConfig cfg;
    cfg.population_size = 12;
    cfg.max_generations = 25;
    auto f = [](const Genome& g) { return Objectives{std::fabs(g[0] - 17.0)}; };
    auto r = run(cfg, 1, {0, 40}, f);
    double init_best = kInf, final_best = kInf;
    for (auto& x : r.initial) init_best = std::min(init_best, x.objectives[0]);
    for (auto& x : r.population) final_best = std::min(final_best, x.objectives[0]);
    CHECK(final_best <= init_best);
    for (std::size_t g = 1; g < r.history.size(); ++g) CHECK(r.history[g].best_sum <= r.history[g - 1].best_sum);
}

TEST_CASE("GA configuration is validated") {
    GAConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.population_size = 7;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.population_size = 2;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = GAConfig{};
    cfg.threshold = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = GAConfig{};
    cfg.crossover_rate = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK(GAConfig{}.effective_mutation_rate(4) == 0.25);
}
