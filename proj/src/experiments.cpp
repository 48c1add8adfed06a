#include "velsps/experiments.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "velsps/errors.hpp"

namespace velsps {

LaneProblem make_problem(const ExperimentConfig& cfg, double avg_speed) {
    LaneProblem p;
    p.scenario = cfg.scenario_at(avg_speed);
    p.scenario.validate();
    p.inputs = make_fairness_inputs(p.scenario, cfg.channel, cfg.sps, cfg.eval_fraction);
    p.bounds = {cfg.sps.w_lb, cfg.sps.w_ub};
    auto inputs = p.inputs;
    p.evaluate = [inputs](const Genome& g) { return objective_vector(inputs, g); };
    if (cfg.relative_threshold) {
        const double factor = cfg.ga.threshold;
        p.threshold = [inputs, factor](const Individual& ind) {
            std::vector<double> w(ind.genome.begin(), ind.genome.end());
            return factor * fairness_index_network(inputs, w);
        };
    } else {
        const double t = cfg.ga.threshold;
        p.threshold = [t](const Individual&) { return t; };
    }
    return p;
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
    SweepResult out;
    out.fig4.header = {"avg_speed", "lane", "optimal_window"};
    out.fig5.header = {"avg_speed", "scheme", "objective_sum"};
    for (double v : cfg.sweep) {
        SweepPoint pt;
        pt.avg_speed = v;
        try {
            LaneProblem prob = make_problem(cfg, v);
            pt.lane_speeds = prob.scenario.lane_speeds;
            RunOptions opts;
            opts.record_metrics = false;
            opts.threshold = prob.threshold;
            RunResult r = run(cfg.ga, prob.inputs.size(), prob.bounds, prob.evaluate, opts);
            pt.optimum = pick_optimum(r.population, prob.threshold);
            Genome base(prob.inputs.size(), cfg.baseline_window);
            pt.baseline_sum = objective_sum(prob.inputs, base);
        } catch (const std::exception& e) {
            throw std::runtime_error("sweep point avg_speed=" + format_number(v) + ": " + e.what());
        }
        for (std::size_t lane = 0; lane < pt.optimum.genome.size(); ++lane)
            out.fig4.add({format_number(v), std::to_string(lane), std::to_string(pt.optimum.genome[lane])});
        out.fig5.add({format_number(v), "optimal", format_number(pt.optimum.sum)});
        out.fig5.add({format_number(v), "standard", format_number(pt.baseline_sum)});
        out.points.push_back(std::move(pt));
    }
    return out;
}

CsvTable run_fig4_sweep(const ExperimentConfig& cfg) { return run_sweep(cfg).fig4; }
CsvTable run_fig5_comparison(const ExperimentConfig& cfg) { return run_sweep(cfg).fig5; }

Fig3Result run_fig3_metrics(const ExperimentConfig& cfg) {
    Fig3Result out;
    LaneProblem prob = make_problem(cfg, cfg.fig3_avg_speed);

    GAConfig long_cfg = cfg.ga;
    long_cfg.max_generations = cfg.ga.max_generations * cfg.metrics.reference_run_factor;
    RunOptions long_opts;
    long_opts.record_metrics = false;
    long_opts.threshold = prob.threshold;
    RunResult reference = run(long_cfg, prob.inputs.size(), prob.bounds, prob.evaluate, long_opts);
    out.context.reference_front = first_front(reference.population);

    // The reference point depends only on the initial population, which is the
    // same for both runs because they share the seed.
    std::vector<Individual> init = reference.initial;
    out.context.reference_point = reference_point_from(init, cfg.metrics.reference_scale);

    RunOptions opts;
    opts.metrics = &out.context;
    opts.threshold = prob.threshold;
    out.run = run(cfg.ga, prob.inputs.size(), prob.bounds, prob.evaluate, opts);

    out.metrics.header = {"generation", "HV", "GD", "IGD", "spacing"};
    out.history.header = {"generation", "HV", "IGD", "GD", "spacing", "best_sum", "feasible_count"};
    for (const auto& h : out.run.history) {
        out.metrics.add({std::to_string(h.generation), format_number(h.hv), format_number(h.gd),
                         format_number(h.igd), format_number(h.spacing)});
        out.history.add({std::to_string(h.generation), format_number(h.hv), format_number(h.igd),
                         format_number(h.gd), format_number(h.spacing), format_number(h.best_sum),
                         std::to_string(h.feasible_count)});
    }
    return out;
}

bool collision_agrees(double analytic, double simulated) {
    if (!std::isfinite(analytic)) return false;
    double diff = std::fabs(simulated - analytic);
    return diff <= kCollisionAbsTol || diff <= kCollisionRelTol * std::fabs(analytic);
}

bool prr_agrees(double analytic, double simulated) {
    return std::isfinite(analytic) && std::fabs(simulated - analytic) <= kPrrAbsTol;
}

OracleReport run_oracle_validation(const ExperimentConfig& cfg) {
    OracleReport rep;
    rep.table.header = {"agents",         "num_subchannels",   "window",           "analytic_collision",
                        "sim_collision",  "sim_collision_se",  "sim_collision_ci_low", "sim_collision_ci_high",
                        "sim_tx_collision", "collision_ok",    "analytic_prr",     "sim_prr",
                        "sim_prr_se",     "sim_prr_ci_low",    "sim_prr_ci_high",  "prr_ok",
                        "reselection_events"};
    const auto& oc = cfg.oracle;
    std::uint64_t index = 0;
    for (int n : oc.num_agents) {
        for (int nsc : oc.num_subchannels) {
            for (int w : oc.windows) {
                SpsParams sps = cfg.sps;
                sps.rri = oc.rri;
                sps.numerology = oc.numerology;
                sps.num_subchannels = nsc;
                sps.keep_probability = oc.keep_probability;
                sps.w_lb = 0;
                sps.w_ub = w;
                const double rate = 1.0 / oc.rri;

                OracleRow row;
                row.agents = n;
                row.num_subchannels = nsc;
                row.window = w;
                std::vector<double> wd(static_cast<std::size_t>(n), static_cast<double>(w));
                std::vector<double> rates(static_cast<std::size_t>(n), rate);
                try {
                    row.analytic_collision = vehicle_collision_probability(sps, wd, 0);
                    row.analytic_prr = packet_reception_ratio(sps, wd, rates, 0);
                } catch (const ModelDomainError&) {
                    row.analytic_collision = std::numeric_limits<double>::quiet_NaN();
                    row.analytic_prr = std::numeric_limits<double>::quiet_NaN();
                }
                SimConfig sc = make_sim_config(sps, std::vector<int>(static_cast<std::size_t>(n), w), oc.rc_min,
                                               oc.rc_max, oc.mode);
                row.sim = run_oracle(sc, oc.num_events, cfg.seed + index++);
                row.collision_ok = collision_agrees(row.analytic_collision, row.sim.reselection_collision.value);
                row.prr_ok = prr_agrees(row.analytic_prr, row.sim.prr.value);
                if (row.collision_ok && row.prr_ok) ++rep.agreeing;

                const auto& c = row.sim.reselection_collision;
                const auto& p = row.sim.prr;
                rep.table.add({std::to_string(n), std::to_string(nsc), std::to_string(w),
                               format_number(row.analytic_collision), format_number(c.value),
                               format_number(c.std_error), format_number(c.ci_low), format_number(c.ci_high),
                               format_number(row.sim.transmission_collision.value), row.collision_ok ? "1" : "0",
                               format_number(row.analytic_prr), format_number(p.value), format_number(p.std_error),
                               format_number(p.ci_low), format_number(p.ci_high), row.prr_ok ? "1" : "0",
                               std::to_string(c.trials)});
                rep.rows.push_back(std::move(row));
            }
        }
    }
    return rep;
}

std::string assumption_ledger(const SpsParams& sps) {
    std::ostringstream o;
    o << "collision model: " << to_string(sps.collision_model) << "\n";
    switch (sps.collision_model) {
        case CollisionModel::Pool:
            o << "  N_r  = N_Sc * slots_per_rri (every PRB of one reservation period)\n"
                 "  N_Ca = gamma * N_r\n"
                 "  C_Ca = N_Ca\n";
            break;
        case CollisionModel::Window:
            o << "  N_r  = N_Sc * (max(w_i, w_j) + 1)\n"
                 "  N_Ca = gamma * N_Sc * ((w_i + w_j) / 2 + 1)\n"
                 "  C_Ca = N_Sc * N_Sh\n";
            break;
        case CollisionModel::Exact:
            o << "  N_r  = N_Sc * sqrt((w_i + 1)(w_j + 1))\n"
                 "  N_Ca = C_Ca = N_Sc * N_Sh\n";
            break;
    }
    o << "  gamma = " << format_number(sps.candidate_fraction) << "\n"
      << "  half-duplex term uses packet_rate / 1000 with one packet per reservation period\n"
      << "  simulated collision = first transmission on a fresh reservation shares its PRB\n"
      << "  simulated success = no other vehicle transmits in the same slot\n";
    return o.str();
}

}  // namespace velsps
