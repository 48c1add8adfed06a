#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "velsps/channel.hpp"
#include "velsps/scenario.hpp"

namespace velsps {

// How the undetermined constants of the pairwise collision formula are chosen.
//   pool:   N_r = N_Sc * S (all PRBs of one reservation period), N_Ca = gamma * N_r, C_Ca = N_Ca
//   window: N_r = N_Sc * (max(w_i, w_j) + 1), C_Ca = N_Sc * N_Sh,
//           N_Ca = gamma * N_Sc * ((w_i + w_j) / 2 + 1)
//   exact:  N_r = N_Sc * sqrt((w_i + 1)(w_j + 1)), C_Ca = N_Ca = N_Sc * N_Sh, which makes the
//           product equal the same-PRB probability of two uniform picks, 1 / (N_Sc * S)
enum class CollisionModel { Pool, Window, Exact };

std::string_view to_string(CollisionModel m);
CollisionModel collision_model_from_string(std::string_view s);

struct SpsParams {
    double rri = 0.1;  // s
    int numerology = 0;
    int num_subchannels = 2;
    int w_lb = 5;
    int w_ub = 49;
    double keep_probability = 0.8;
    double candidate_fraction = 0.2;
    double sensing_window_ms = 1000.0;
    double packet_rate = 10.0;  // packets/s
    CollisionModel collision_model = CollisionModel::Pool;

    void validate() const;
    int slots_per_rri() const;
};

int slots_per_rri(int numerology, double rri);

double overlap_probability(double w_i, double w_j, int numerology, double rri);
double shared_resources(double w_i, double w_j);
double shared_selection_probability(double n_sc, double n_sh, double n_r);
double collision_probability(double p_o, double p_sh_given_o, double c_ca, double n_ca);
double half_duplex_probability(double packet_rate);

struct CollisionTerms {
    double p_o;
    double n_sh;
    double n_r;
    double p_sh_given_o;
    double c_ca;
    double n_ca;
    double delta;
};

CollisionTerms collision_terms(const SpsParams& sps, double w_i, double w_j);
double collision_probability(const SpsParams& sps, double w_i, double w_j);

// Product form over the neighbours' per-pair terms.
double packet_reception_ratio(std::span<const double> delta_col, std::span<const double> delta_hd);
// PRR of vehicle i among vehicles with the given windows and packet rates.
double packet_reception_ratio(const SpsParams& sps, std::span<const double> windows,
                              std::span<const double> packet_rates, std::size_t i);
// 1 - prod_{j != i} (1 - delta_ij): chance that at least one neighbour collides with i.
double vehicle_collision_probability(const SpsParams& sps, std::span<const double> windows,
                                     std::size_t i);

struct FairnessInputs {
    ChannelParams channel;
    SpsParams sps;
    std::vector<double> speed;     // |v_i|
    std::vector<double> distance;  // d_i at the evaluation epoch
    std::vector<double> gain2;     // |h_i|^2
    double network_distance = 1.0; // d at the same epoch for a vehicle moving at the mean speed
    double network_gain2 = 1.0;

    std::size_t size() const { return speed.size(); }
    double mean_speed() const;
};

// One representative vehicle per lane, evaluated at eval_fraction of its residence time.
FairnessInputs make_fairness_inputs(const ScenarioConfig& scenario, const ChannelParams& channel,
                                    const SpsParams& sps, double eval_fraction = 0.5);

double fairness_index_vehicle(const FairnessInputs& in, std::span<const double> windows, std::size_t i);
double fairness_index_network(const FairnessInputs& in, std::span<const double> windows);
std::vector<double> objective_vector(const FairnessInputs& in, std::span<const int> windows);
double objective_sum(const FairnessInputs& in, std::span<const int> windows);

}  // namespace velsps
