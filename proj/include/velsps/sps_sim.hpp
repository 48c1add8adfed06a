#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "velsps/rng.hpp"
#include "velsps/sps_analytics.hpp"

namespace velsps {

// Free-running: every agent keeps its own reservation phase and RC.
// Aligned: agents share one RC per round and reselect together at round boundaries.
enum class SimMode { FreeRunning, Aligned };

std::string_view to_string(SimMode m);
SimMode sim_mode_from_string(std::string_view s);

struct SimConfig {
    std::vector<int> windows;  // one selection window per agent, in slots
    int num_subchannels = 2;
    int rri_slots = 20;
    int slots_per_ms = 1;
    int rc_min = 5;
    int rc_max = 15;
    double keep_probability = 0.0;
    double candidate_fraction = 0.2;
    double sensing_window_ms = 1000.0;
    SimMode mode = SimMode::FreeRunning;
    // Statistics ignore everything before this slot; -1 means one sensing window.
    std::int64_t warmup_slots = -1;

    void validate() const;
    std::size_t num_agents() const { return windows.size(); }
    std::int64_t sensing_slots() const;
    std::int64_t effective_warmup() const;
};

SimConfig make_sim_config(const SpsParams& sps, std::vector<int> windows, int rc_min = 5, int rc_max = 15,
                          SimMode mode = SimMode::FreeRunning);

struct Prb {
    std::int64_t slot = 0;
    int subchannel = 0;
    friend bool operator==(const Prb&, const Prb&) = default;
};

// A periodic reservation seen on the air: the PRB (slot, subchannel) repeats every
// rri_slots. observed_at orders exclusions for least-recently-used re-admission.
struct SensedReservation {
    std::int64_t slot = 0;
    int subchannel = 0;
    std::int64_t observed_at = 0;
};

// PRBs of the window [now+1, now+1+window] not covered by a sensed reservation.
// When fewer than ceil(gamma * N_Sc * (window+1)) remain, excluded PRBs are re-admitted
// oldest observation first until the floor is met.
std::vector<Prb> candidate_set(std::int64_t now, int window, int num_subchannels, int rri_slots,
                               double candidate_fraction, std::span<const SensedReservation> sensed);
Prb reselect(std::int64_t now, int window, int num_subchannels, int rri_slots, double candidate_fraction,
             std::span<const SensedReservation> sensed, Rng& rng);

struct SpsAgentState {
    Prb prb{};               // next reserved transmission
    int rc = 0;
    int rri_slots = 0;
    int window = 0;
    double keep_probability = 0.0;
    bool scheduled = false;  // prb is a pending transmission
    std::int64_t reselect_at = -1;
    bool fresh = false;      // next transmission is the first on a new reservation
    bool fresh_counted = false;
};

struct TxEvent {
    std::int64_t slot;
    std::size_t agent;
    int subchannel;
    bool collided;     // another agent used the same PRB
    bool successful;   // no other agent transmitted in the slot at all
};

struct AgentStats {
    std::uint64_t transmissions = 0;
    std::uint64_t collided = 0;
    std::uint64_t successful = 0;
    std::uint64_t reselections = 0;          // counted at the first transmission on the new PRB
    std::uint64_t reselection_collided = 0;
    std::uint64_t rc_expiries = 0;
    std::uint64_t keeps = 0;
};

class Simulator {
public:
    Simulator(SimConfig config, std::uint64_t seed);

    // Advances to the next slot with activity and returns its transmissions.
    std::vector<TxEvent> step();
    std::int64_t now() const { return now_; }
    // Slot that the next call to step() will process.
    std::int64_t next_slot() const { return next_activity(); }
    const std::vector<SpsAgentState>& agents() const { return agents_; }
    const std::vector<AgentStats>& stats() const { return stats_; }
    AgentStats totals() const;
    const SimConfig& config() const { return cfg_; }

    // Optional per-transmission observer (for traces).
    void on_transmission(std::function<void(const TxEvent&)> cb) { observer_ = std::move(cb); }

private:
    struct Observation {
        bool valid = false;
        std::int64_t slot = 0;
        int subchannel = 0;
        bool announces_next = false;
    };

    int draw_rc();
    void do_reselect(std::size_t i, std::int64_t t);
    std::int64_t next_activity() const;

    SimConfig cfg_;
    Rng rng_;
    std::vector<SpsAgentState> agents_;
    std::vector<Observation> seen_;
    std::vector<AgentStats> stats_;
    std::int64_t now_ = -1;
    std::int64_t round_end_ = -1;
    std::function<void(const TxEvent&)> observer_;
};

struct BinomialEstimate {
    double value = 0.0;
    double std_error = 0.0;
    double ci_low = 0.0;   // 95 % Wilson interval
    double ci_high = 0.0;
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
};

BinomialEstimate binomial_estimate(std::uint64_t successes, std::uint64_t trials);

struct OracleRun {
    BinomialEstimate reselection_collision;  // first transmission on a fresh reservation collides
    BinomialEstimate transmission_collision; // any transmission collides
    BinomialEstimate prr;
    BinomialEstimate keep_fraction;          // RC expiries that kept the reservation
    AgentStats totals;
    std::int64_t slots = 0;
};

// Runs until num_events reselections have been observed (or 50 * num_events transmissions).
OracleRun run_oracle(const SimConfig& config, std::uint64_t num_events, std::uint64_t seed);
BinomialEstimate estimate_collision_prob(const SimConfig& config, std::uint64_t num_events, std::uint64_t seed);
BinomialEstimate estimate_prr(const SimConfig& config, std::uint64_t num_events, std::uint64_t seed);

// Writes "slot,vehicle_id,subchannel,collided" rows for every transmission until max_slot.
std::string trace_csv(const SimConfig& config, std::uint64_t seed, std::int64_t max_slot);

}  // namespace velsps
