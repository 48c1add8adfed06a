#include "velsps/sps_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "velsps/errors.hpp"

namespace velsps {

std::string_view to_string(SimMode m) { return m == SimMode::Aligned ? "aligned" : "free"; }

SimMode sim_mode_from_string(std::string_view s) {
    if (s == "free") return SimMode::FreeRunning;
    if (s == "aligned") return SimMode::Aligned;
    throw ConfigError("sim.mode", "unknown mode '" + std::string(s) + "'");
}

void SimConfig::validate() const {
    if (windows.empty()) throw ConfigError("sim.windows", "at least one agent required");
    if (num_subchannels < 1) throw ConfigError("sim.num_subchannels", "must be >= 1");
    if (rri_slots < 1) throw ConfigError("sim.rri_slots", "must be >= 1");
    if (slots_per_ms < 1) throw ConfigError("sim.slots_per_ms", "must be >= 1");
    for (int w : windows)
        if (w < 0 || w + 1 >= rri_slots)
            throw ConfigError("sim.windows", "each window needs 0 <= w and w + 1 < rri_slots");
    if (rc_min < 1 || rc_max < rc_min) throw ConfigError("sim.rc_range", "need 1 <= rc_min <= rc_max");
    if (!(keep_probability >= 0.0 && keep_probability <= 1.0))
        throw ConfigError("sim.keep_probability", "must lie in [0, 1]");
    if (!(candidate_fraction > 0.0 && candidate_fraction <= 1.0))
        throw ConfigError("sim.candidate_fraction", "must lie in (0, 1]");
    if (!(sensing_window_ms > 0.0)) throw ConfigError("sim.sensing_window_ms", "must be > 0");
}

std::int64_t SimConfig::sensing_slots() const {
    return static_cast<std::int64_t>(std::llround(sensing_window_ms * slots_per_ms));
}

std::int64_t SimConfig::effective_warmup() const { return warmup_slots >= 0 ? warmup_slots : sensing_slots(); }

SimConfig make_sim_config(const SpsParams& sps, std::vector<int> windows, int rc_min, int rc_max, SimMode mode) {
    SimConfig c;
    c.windows = std::move(windows);
    c.num_subchannels = sps.num_subchannels;
    c.rri_slots = sps.slots_per_rri();
    c.slots_per_ms = 1 << sps.numerology;
    c.rc_min = rc_min;
    c.rc_max = rc_max;
    c.keep_probability = sps.keep_probability;
    c.candidate_fraction = sps.candidate_fraction;
    c.sensing_window_ms = sps.sensing_window_ms;
    c.mode = mode;
    return c;
}

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace

std::vector<Prb> candidate_set(std::int64_t now, int window, int num_subchannels, int rri_slots,
                               double candidate_fraction, std::span<const SensedReservation> sensed) {
    if (window < 0 || num_subchannels < 1 || rri_slots < 1)
        throw DomainError("reselect: empty resource grid");
    struct Tagged {
        Prb prb;
        std::int64_t observed_at;
    };
    std::vector<Prb> free;
    std::vector<Tagged> excluded;
    for (std::int64_t x = now + 1; x <= now + 1 + window; ++x) {
        for (int c = 0; c < num_subchannels; ++c) {
            std::int64_t latest = std::numeric_limits<std::int64_t>::min();
            for (const auto& r : sensed)
                if (r.subchannel == c && floor_mod(x - r.slot, rri_slots) == 0)
                    latest = std::max(latest, r.observed_at);
            if (latest == std::numeric_limits<std::int64_t>::min())
                free.push_back({x, c});
            else
                excluded.push_back({{x, c}, latest});
        }
    }
    const auto total = static_cast<double>(num_subchannels) * (window + 1);
    const auto floor_count = static_cast<std::size_t>(std::ceil(candidate_fraction * total - 1e-9));
    if (free.size() < floor_count) {
        std::stable_sort(excluded.begin(), excluded.end(),
                         [](const Tagged& a, const Tagged& b) { return a.observed_at < b.observed_at; });
        for (const auto& e : excluded) {
            if (free.size() >= floor_count) break;
            free.push_back(e.prb);
        }
        std::sort(free.begin(), free.end(), [](const Prb& a, const Prb& b) {
            return a.slot != b.slot ? a.slot < b.slot : a.subchannel < b.subchannel;
        });
    }
    return free;
}

Prb reselect(std::int64_t now, int window, int num_subchannels, int rri_slots, double candidate_fraction,
             std::span<const SensedReservation> sensed, Rng& rng) {
    auto cands = candidate_set(now, window, num_subchannels, rri_slots, candidate_fraction, sensed);
    if (cands.empty()) throw DomainError("reselect: no candidate resources");
    std::uniform_int_distribution<std::size_t> pick(0, cands.size() - 1);
    return cands[pick(rng)];
}

Simulator::Simulator(SimConfig config, std::uint64_t seed) : cfg_(std::move(config)), rng_(make_rng(seed)) {
    cfg_.validate();
    const std::size_t n = cfg_.num_agents();
    agents_.resize(n);
    seen_.resize(n);
    stats_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& a = agents_[i];
        a.rri_slots = cfg_.rri_slots;
        a.window = cfg_.windows[i];
        a.keep_probability = cfg_.keep_probability;
    }
    if (cfg_.mode == SimMode::Aligned) {
        round_end_ = 0;
        for (auto& a : agents_) a.reselect_at = 0;
    } else {
        std::uniform_int_distribution<std::int64_t> phase(0, cfg_.rri_slots - 1);
        for (auto& a : agents_) a.reselect_at = phase(rng_);
    }
}

int Simulator::draw_rc() {
    std::uniform_int_distribution<int> d(cfg_.rc_min, cfg_.rc_max);
    return d(rng_);
}

std::int64_t Simulator::next_activity() const {
    std::int64_t t = std::numeric_limits<std::int64_t>::max();
    for (const auto& a : agents_) {
        if (a.scheduled) t = std::min(t, a.prb.slot);
        if (a.reselect_at >= 0) t = std::min(t, a.reselect_at);
    }
    if (cfg_.mode == SimMode::Aligned && round_end_ > now_) t = std::min(t, round_end_);
    return t;
}

void Simulator::do_reselect(std::size_t i, std::int64_t t) {
    std::vector<SensedReservation> sensed;
    const std::int64_t horizon = t - cfg_.sensing_slots();
    for (std::size_t k = 0; k < seen_.size(); ++k) {
        if (k == i) continue;
        const auto& o = seen_[k];
        if (o.valid && o.announces_next && o.slot > horizon) sensed.push_back({o.slot, o.subchannel, o.slot});
    }
    auto& a = agents_[i];
    a.prb = reselect(t, a.window, cfg_.num_subchannels, cfg_.rri_slots, cfg_.candidate_fraction, sensed, rng_);
    a.scheduled = true;
    a.reselect_at = -1;
    a.fresh = true;
    a.fresh_counted = t >= cfg_.effective_warmup();
    if (cfg_.mode == SimMode::FreeRunning) a.rc = draw_rc();
}

std::vector<TxEvent> Simulator::step() {
    const std::int64_t t = next_activity();
    now_ = t;
    std::vector<TxEvent> events;

    std::vector<std::size_t> tx;
    for (std::size_t i = 0; i < agents_.size(); ++i)
        if (agents_[i].scheduled && agents_[i].prb.slot == t) tx.push_back(i);

    const bool counting = t >= cfg_.effective_warmup();
    for (std::size_t i : tx) {
        auto& a = agents_[i];
        bool collided = false;
        for (std::size_t j : tx)
            if (j != i && agents_[j].prb.subchannel == a.prb.subchannel) collided = true;
        TxEvent ev{t, i, a.prb.subchannel, collided, tx.size() == 1};
        events.push_back(ev);
        if (observer_) observer_(ev);
        auto& s = stats_[i];
        if (counting) {
            ++s.transmissions;
            s.collided += collided ? 1 : 0;
            s.successful += ev.successful ? 1 : 0;
        }
        if (a.fresh && a.fresh_counted) {
            ++s.reselections;
            s.reselection_collided += collided ? 1 : 0;
        }
        a.fresh = false;
    }

    // Counter bookkeeping and what each transmission announces.
    for (std::size_t i : tx) {
        auto& a = agents_[i];
        bool announces = true;
        if (--a.rc <= 0) {
            if (t >= cfg_.effective_warmup()) ++stats_[i].rc_expiries;
            std::bernoulli_distribution keep(a.keep_probability);
            if (keep(rng_)) {
                if (t >= cfg_.effective_warmup()) ++stats_[i].keeps;
                if (cfg_.mode == SimMode::FreeRunning) a.rc = draw_rc();
            } else {
                announces = false;
                a.scheduled = false;
                a.reselect_at = cfg_.mode == SimMode::FreeRunning ? t : round_end_;
            }
        }
        seen_[i] = {true, t, a.prb.subchannel, announces};
        if (a.scheduled) a.prb.slot += a.rri_slots;
    }

    if (cfg_.mode == SimMode::Aligned && t == round_end_) {
        int rc = draw_rc();
        round_end_ = t + static_cast<std::int64_t>(rc) * cfg_.rri_slots;
        for (auto& a : agents_) a.rc = rc;
    }

    for (std::size_t i = 0; i < agents_.size(); ++i)
        if (agents_[i].reselect_at == t) do_reselect(i, t);
    return events;
}

AgentStats Simulator::totals() const {
    AgentStats t;
    for (const auto& s : stats_) {
        t.transmissions += s.transmissions;
        t.collided += s.collided;
        t.successful += s.successful;
        t.reselections += s.reselections;
        t.reselection_collided += s.reselection_collided;
        t.rc_expiries += s.rc_expiries;
        t.keeps += s.keeps;
    }
    return t;
}

BinomialEstimate binomial_estimate(std::uint64_t successes, std::uint64_t trials) {
    BinomialEstimate e;
    e.successes = successes;
    e.trials = trials;
    if (trials == 0) return e;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z = 1.959963984540054;
    e.value = p;
    e.std_error = std::sqrt(p * (1.0 - p) / n);
    const double denom = 1.0 + z * z / n;
    const double centre = (p + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
    e.ci_low = successes == 0 ? 0.0 : std::max(0.0, centre - half);
    e.ci_high = successes == trials ? 1.0 : std::min(1.0, centre + half);
    return e;
}

OracleRun run_oracle(const SimConfig& config, std::uint64_t num_events, std::uint64_t seed) {
    if (num_events < 1000) throw DomainError("run_oracle: num_events must be >= 1000");
    Simulator sim(config, seed);
    const std::uint64_t tx_cap = 50 * num_events;
    AgentStats tot;
    while (true) {
        sim.step();
        tot = sim.totals();
        if (tot.reselections >= num_events || tot.transmissions >= tx_cap) break;
    }
    OracleRun r;
    r.totals = tot;
    r.slots = sim.now() + 1;
    r.reselection_collision = binomial_estimate(tot.reselection_collided, tot.reselections);
    r.transmission_collision = binomial_estimate(tot.collided, tot.transmissions);
    r.prr = binomial_estimate(tot.successful, tot.transmissions);
    r.keep_fraction = binomial_estimate(tot.keeps, tot.rc_expiries);
    return r;
}

BinomialEstimate estimate_collision_prob(const SimConfig& config, std::uint64_t num_events, std::uint64_t seed) {
    return run_oracle(config, num_events, seed).reselection_collision;
}

BinomialEstimate estimate_prr(const SimConfig& config, std::uint64_t num_events, std::uint64_t seed) {
    return run_oracle(config, num_events, seed).prr;
}

std::string trace_csv(const SimConfig& config, std::uint64_t seed, std::int64_t max_slot) {
    Simulator sim(config, seed);
    std::ostringstream out;
    out << "slot,vehicle_id,subchannel,collided\n";
    sim.on_transmission([&](const TxEvent& e) {
        out << e.slot << ',' << e.agent << ',' << e.subchannel << ',' << (e.collided ? 1 : 0) << '\n';
    });
    while (sim.next_slot() <= max_slot) sim.step();
    return out.str();
}

}  // namespace velsps
