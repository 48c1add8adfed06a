#include "velsps/sps_analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "velsps/errors.hpp"

namespace velsps {

std::string_view to_string(CollisionModel m) {
    switch (m) {
        case CollisionModel::Pool: return "pool";
        case CollisionModel::Window: return "window";
        case CollisionModel::Exact: return "exact";
    }
    return "pool";
}

CollisionModel collision_model_from_string(std::string_view s) {
    if (s == "pool") return CollisionModel::Pool;
    if (s == "window") return CollisionModel::Window;
    if (s == "exact") return CollisionModel::Exact;
    throw ConfigError("sps.collision_model", "unknown model '" + std::string(s) + "'");
}

int slots_per_rri(int numerology, double rri) {
    if (numerology < 0) throw DomainError("slots_per_rri: numerology must be >= 0");
    double s = 1000.0 * std::ldexp(1.0, numerology) * rri;
    double r = std::round(s);
    if (!(r >= 1.0) || std::fabs(s - r) > 1e-9 * std::max(1.0, r))
        throw DomainError("slots_per_rri: 1000 * 2^mu * rri must be a positive integer");
    return static_cast<int>(r);
}

void SpsParams::validate() const {
    if (numerology < 0) throw ConfigError("sps.numerology", "must be >= 0");
    int s = 0;
    try {
        s = velsps::slots_per_rri(numerology, rri);
    } catch (const DomainError&) {
        throw ConfigError("sps.rri", "1000 * 2^numerology * rri must be a positive integer");
    }
    if (num_subchannels < 1) throw ConfigError("sps.num_subchannels", "must be >= 1");
    if (w_lb < 0 || w_lb > w_ub) throw ConfigError("window_bounds", "need 0 <= w_lb <= w_ub");
    if (2 * w_ub + 1 > s)
        throw ConfigError("window_bounds", "2 * w_ub + 1 exceeds the slots of one reservation period");
    if (!(keep_probability >= 0.0 && keep_probability <= 0.8))
        throw ConfigError("sps.keep_probability", "must lie in [0, 0.8]");
    if (!(candidate_fraction > 0.0 && candidate_fraction <= 1.0))
        throw ConfigError("sps.candidate_fraction", "must lie in (0, 1]");
    if (sensing_window_ms != 1000.0) throw ConfigError("sps.sensing_window_ms", "fixed at 1000");
    if (!(packet_rate > 0.0 && packet_rate <= 1000.0))
        throw ConfigError("sps.packet_rate", "must lie in (0, 1000]");
}

int SpsParams::slots_per_rri() const { return velsps::slots_per_rri(numerology, rri); }

double overlap_probability(double w_i, double w_j, int numerology, double rri) {
    if (!(w_i >= 0.0 && w_j >= 0.0)) throw DomainError("overlap_probability: windows must be >= 0");
    double s = slots_per_rri(numerology, rri);
    double num = w_i + w_j + 1.0;
    if (num > s) throw ModelDomainError("overlap_probability: windows exceed the reservation period");
    return num / s;
}

double shared_resources(double w_i, double w_j) {
    if (!(w_i >= 0.0 && w_j >= 0.0)) throw DomainError("shared_resources: windows must be >= 0");
    return (w_i + 1.0) * (w_j + 1.0) / (w_i + w_j + 1.0);
}

double shared_selection_probability(double n_sc, double n_sh, double n_r) {
    if (!(n_sc > 0.0 && n_sh > 0.0 && n_r > 0.0))
        throw DomainError("shared_selection_probability: arguments must be positive");
    double shared = n_sc * n_sh;
    if (shared > n_r * (1.0 + 1e-12))
        throw ModelDomainError("shared_selection_probability: N_Sc * N_Sh exceeds N_r");
    double r = shared / n_r;
    return r * r;
}

double collision_probability(double p_o, double p_sh_given_o, double c_ca, double n_ca) {
    if (p_o == 0.0) return 0.0;
    if (!(n_ca > 0.0)) throw ModelDomainError("collision_probability: N_Ca must be > 0");
    double d = p_o * p_sh_given_o * c_ca / (n_ca * n_ca);
    if (!(d >= 0.0 && d <= 1.0))
        throw ModelDomainError("collision_probability: result outside [0, 1]; check C_Ca / N_Ca");
    return d;
}

double half_duplex_probability(double packet_rate) {
    if (!(packet_rate >= 0.0 && packet_rate <= 1000.0))
        throw DomainError("half_duplex_probability: packet rate must lie in [0, 1000]");
    return packet_rate / 1000.0;
}

CollisionTerms collision_terms(const SpsParams& sps, double w_i, double w_j) {
    CollisionTerms t{};
    const double n_sc = sps.num_subchannels;
    const double a = w_i + 1.0;
    const double b = w_j + 1.0;
    t.p_o = overlap_probability(w_i, w_j, sps.numerology, sps.rri);
    t.n_sh = shared_resources(w_i, w_j);
    switch (sps.collision_model) {
        case CollisionModel::Pool:
            t.n_r = n_sc * sps.slots_per_rri();
            t.n_ca = sps.candidate_fraction * t.n_r;
            t.c_ca = t.n_ca;
            break;
        case CollisionModel::Window:
            t.n_r = n_sc * std::max(a, b);
            t.c_ca = n_sc * t.n_sh;
            t.n_ca = sps.candidate_fraction * n_sc * (a + b) / 2.0;
            break;
        case CollisionModel::Exact:
            t.n_r = n_sc * std::sqrt(a * b);
            t.c_ca = n_sc * t.n_sh;
            t.n_ca = t.c_ca;
            break;
    }
    t.p_sh_given_o = shared_selection_probability(n_sc, t.n_sh, t.n_r);
    t.delta = collision_probability(t.p_o, t.p_sh_given_o, t.c_ca, t.n_ca);
    return t;
}

double collision_probability(const SpsParams& sps, double w_i, double w_j) {
    return collision_terms(sps, w_i, w_j).delta;
}

double packet_reception_ratio(std::span<const double> delta_col, std::span<const double> delta_hd) {
    double p = 1.0;
    for (double d : delta_col) p *= 1.0 - d;
    for (double d : delta_hd) p *= 1.0 - d;
    return p;
}

double packet_reception_ratio(const SpsParams& sps, std::span<const double> windows,
                              std::span<const double> packet_rates, std::size_t i) {
    if (windows.size() != packet_rates.size()) throw DomainError("packet_reception_ratio: size mismatch");
    std::vector<double> col;
    std::vector<double> hd;
    for (std::size_t j = 0; j < windows.size(); ++j) {
        if (j == i) continue;
        col.push_back(collision_probability(sps, windows[i], windows[j]));
        hd.push_back(half_duplex_probability(packet_rates[j]));
    }
    return packet_reception_ratio(col, hd);
}

double vehicle_collision_probability(const SpsParams& sps, std::span<const double> windows,
                                     std::size_t i) {
    double ok = 1.0;
    for (std::size_t j = 0; j < windows.size(); ++j)
        if (j != i) ok *= 1.0 - collision_probability(sps, windows[i], windows[j]);
    return 1.0 - ok;
}

double FairnessInputs::mean_speed() const {
    return std::accumulate(speed.begin(), speed.end(), 0.0) / static_cast<double>(speed.size());
}

FairnessInputs make_fairness_inputs(const ScenarioConfig& sc, const ChannelParams& ch, const SpsParams& sps,
                                    double eval_fraction) {
    if (!(eval_fraction >= 0.0 && eval_fraction <= 1.0))
        throw DomainError("make_fairness_inputs: eval_fraction must lie in [0, 1]");
    FairnessInputs in;
    in.channel = ch;
    in.sps = sps;
    double lateral_sum = 0.0;
    for (int lane = 0; lane < sc.num_lanes; ++lane) {
        double v = std::fabs(sc.lane_speeds[static_cast<std::size_t>(lane)]);
        double t = eval_fraction * residence_time(v, sc.coverage_range);
        double off = sc.lateral_offset(lane);
        lateral_sum += off;
        in.speed.push_back(v);
        in.distance.push_back(distance_to_rsu(vehicle_position(v, t, off), sc.rsu_position));
        in.gain2.push_back(1.0);
    }
    double vbar = in.mean_speed();
    double tbar = eval_fraction * residence_time(vbar, sc.coverage_range);
    in.network_distance =
        distance_to_rsu(vehicle_position(vbar, tbar, lateral_sum / sc.num_lanes), sc.rsu_position);
    return in;
}

double fairness_index_vehicle(const FairnessInputs& in, std::span<const double> windows, std::size_t i) {
    double v = in.speed.at(i);
    if (!(v > 0.0)) throw DomainError("fairness_index_vehicle: speed must be > 0");
    double k = spectral_efficiency(in.channel, in.gain2.at(i), in.distance.at(i));
    for (std::size_t j = 0; j < windows.size(); ++j)
        if (j != i) k *= 1.0 - collision_probability(in.sps, windows[i], windows[j]);
    return k / v;
}

double fairness_index_network(const FairnessInputs& in, std::span<const double> windows) {
    double vbar = in.mean_speed();
    if (!(vbar > 0.0)) throw DomainError("fairness_index_network: mean speed must be > 0");
    double wbar = std::accumulate(windows.begin(), windows.end(), 0.0) / static_cast<double>(windows.size());
    double keep = 1.0 - collision_probability(in.sps, wbar, wbar);
    double k = spectral_efficiency(in.channel, in.network_gain2, in.network_distance);
    for (std::size_t j = 1; j < windows.size(); ++j) k *= keep;
    return k / vbar;
}

std::vector<double> objective_vector(const FairnessInputs& in, std::span<const int> windows) {
    if (windows.size() != in.size()) throw DomainError("objective_vector: one window per vehicle required");
    std::vector<double> w(windows.size());
    for (std::size_t i = 0; i < windows.size(); ++i) {
        if (windows[i] < in.sps.w_lb || windows[i] > in.sps.w_ub)
            throw DomainError("objective_vector: window outside [w_lb, w_ub]");
        w[i] = windows[i];
    }
    double net = fairness_index_network(in, w);
    std::vector<double> f(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) f[i] = std::fabs(net - fairness_index_vehicle(in, w, i));
    return f;
}

double objective_sum(const FairnessInputs& in, std::span<const int> windows) {
    auto f = objective_vector(in, windows);
    return std::accumulate(f.begin(), f.end(), 0.0);
}

}  // namespace velsps
