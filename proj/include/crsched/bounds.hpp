#pragma once

// Runs both algorithms on one instance, reports the bracket on the optimal
// average buffer length, and certifies the special cases in which one side is
// exact: greedy is optimal when the battery cap never binds along its own
// trajectory; the re-allocation is optimal (for the energy-relaxed problem)
// when the battery cap binds in every slot along its trajectory.
//
// The certifying conditions depend on realized states. The normative scan
// follows the certified algorithm's own trajectory; an a-priori variant
// evaluated on the never-transmit envelope (battery and queue both at their
// maxima) is reported alongside, since the conditions are sometimes read as
// checks on exogenous data.

#include <cstddef>
#include <vector>

#include "crsched/greedy.hpp"
#include "crsched/model.hpp"
#include "crsched/realloc.hpp"

namespace crsched {

enum class RelaxedOptimum { GreedyOptimal, ReallocOptimal, Indeterminate };

inline const char* relaxed_optimum_name(RelaxedOptimum c) {
    switch (c) {
        case RelaxedOptimum::GreedyOptimal: return "greedy";
        case RelaxedOptimum::ReallocOptimal: return "realloc";
        default: return "neither";
    }
}

struct BoundReport {
    double upper = 0.0;  // greedy objective
    double lower = 0.0;  // re-allocation objective (unclamped)
    double gap = 0.0;
    bool greedy_exact = false;    // battery cap slack in all slots (greedy traj)
    bool realloc_exact = false;   // battery cap tight in all slots (realloc traj)
    bool greedy_exact_apriori = false;
    bool realloc_exact_apriori = false;
    RelaxedOptimum relaxed_case = RelaxedOptimum::Indeterminate;
    ConstraintProfile per_slot;  // greedy trajectory caps
    GreedyResult greedy;
    ReallocResult realloc;
};

// True in slot n when E[n]/tau <= min(isr cap, rate cap) along the given
// power schedule's battery/queue trajectory.
inline SlotScan energy_always_binding(const ScenarioConfig& cfg,
                                      const Schedule& sched) {
    SlotScan scan;
    scan.per_slot.resize(cfg.N);
    scan.all = true;
    const std::vector<double> e = battery_trajectory(cfg, sched.P);
    for (std::size_t n = 1; n <= cfg.N; ++n) {
        const SlotState s{e[n - 1], sched.q_traj[n - 1]};
        const ConstraintCaps caps = merged_caps(s, n, cfg);
        const bool ok = caps.energy <= std::min(caps.isr, caps.rate);
        scan.per_slot[n - 1] = ok;
        scan.all = scan.all && ok;
    }
    return scan;
}

namespace detail {

// Never-transmit envelope: battery and queue at their running maxima.
inline std::vector<SlotState> envelope_states(const ScenarioConfig& cfg) {
    std::vector<SlotState> s(cfg.N);
    double e = cfg.Ea0, q = cfg.Q0;
    for (std::size_t n = 0; n < cfg.N; ++n) {
        s[n] = {e, q};
        e += cfg.Ea[n];
        q += cfg.Da[n];
    }
    return s;
}

}  // namespace detail

inline BoundReport assemble_bounds(const ScenarioConfig& cfg) {
    BoundReport rep;
    rep.greedy = greedy_allocate(cfg);
    rep.realloc = reallocate_power(cfg);
    rep.upper = rep.greedy.schedule.objective;
    rep.lower = rep.realloc.schedule.objective;
    rep.gap = rep.upper - rep.lower;
    rep.per_slot = rep.greedy.profile;
    rep.greedy_exact = energy_never_binding(cfg, rep.greedy).all;
    rep.realloc_exact = energy_always_binding(cfg, rep.realloc.schedule).all;

    bool slack_all = true, tight_all = true;
    const std::vector<SlotState> env = detail::envelope_states(cfg);
    for (std::size_t n = 1; n <= cfg.N; ++n) {
        const ConstraintCaps caps = merged_caps(env[n - 1], n, cfg);
        const double other = std::min(caps.isr, caps.rate);
        slack_all = slack_all && caps.energy >= other;
        tight_all = tight_all && caps.energy <= other;
    }
    rep.greedy_exact_apriori = slack_all;
    rep.realloc_exact_apriori = tight_all;

    // classification for the no-ISR relaxation
    const GreedyResult gr = greedy_allocate_relaxed(cfg);
    bool rate_binds_never = true, rate_binds_always = true;
    const std::vector<double> e_g = battery_trajectory(cfg, gr.schedule.P);
    for (std::size_t n = 1; n <= cfg.N; ++n) {
        const SlotState s{e_g[n - 1], std::max(gr.schedule.q_traj[n - 1], 0.0)};
        const ConstraintCaps caps = merged_caps(s, n, cfg, IsrMode::Ignore);
        rate_binds_never = rate_binds_never && caps.energy >= caps.rate;
    }
    const std::vector<double> e_p = battery_trajectory(cfg, rep.realloc.schedule.P);
    for (std::size_t n = 1; n <= cfg.N; ++n) {
        const SlotState s{e_p[n - 1], rep.realloc.schedule.q_traj[n - 1]};
        const ConstraintCaps caps = merged_caps(s, n, cfg, IsrMode::Ignore);
        rate_binds_always = rate_binds_always && caps.energy < caps.rate;
    }
    if (rate_binds_never)
        rep.relaxed_case = RelaxedOptimum::GreedyOptimal;
    else if (rate_binds_always)
        rep.relaxed_case = RelaxedOptimum::ReallocOptimal;
    else
        rep.relaxed_case = RelaxedOptimum::Indeterminate;
    return rep;
}

inline RelaxedOptimum classify_relaxed_optimum(const ScenarioConfig& cfg) {
    return assemble_bounds(cfg).relaxed_case;
}

}  // namespace crsched
