#pragma once

// Online greedy allocation: transmit at the merged cap in every slot. The
// result is feasible for all three constraints and upper-bounds the optimal
// average buffer length. The relaxed variant ignores the ISR cap and needs no
// primary-side information.

#include <cstddef>
#include <vector>

#include "crsched/model.hpp"

namespace crsched {

struct GreedyResult {
    Schedule schedule;
    ConstraintProfile profile;
};

namespace detail {

inline GreedyResult greedy_core(const ScenarioConfig& cfg, IsrMode mode) {
    GreedyResult out;
    out.schedule.P.resize(cfg.N);
    out.schedule.R.resize(cfg.N);
    out.profile.reserve(cfg.N);

    SlotState s{cfg.Ea0, cfg.Q0};
    for (std::size_t n = 1; n <= cfg.N; ++n) {
        const ConstraintCaps caps = merged_caps(s, n, cfg, mode);
        const double P = caps.merged;
        out.schedule.P[n - 1] = P;
        out.schedule.R[n - 1] = rate(P, cfg.alpha(n), cfg.log_base);
        out.profile.push_back(caps);
        s = step(s, n, P, cfg.Ea[n - 1], cfg.Da[n - 1], cfg, /*strict_rate=*/false);
        // the rate cap keeps Q >= 0 mathematically; strip rounding noise so
        // the next slot's caps stay in range
        s.Q = std::max(s.Q, 0.0);
    }
    out.schedule.q_traj = queue_trajectory(cfg, out.schedule.R);
    out.schedule.objective = objective(out.schedule.q_traj);
    return out;
}

}  // namespace detail

inline GreedyResult greedy_allocate(const ScenarioConfig& cfg) {
    return detail::greedy_core(cfg, IsrMode::Enforce);
}

inline GreedyResult greedy_allocate_relaxed(const ScenarioConfig& cfg) {
    return detail::greedy_core(cfg, IsrMode::Ignore);
}

// Per-slot condition scan used by the optimality certificates.
struct SlotScan {
    std::vector<bool> per_slot;
    bool all = false;
};

// True in slot n when the battery could cover whichever other cap binds,
// i.e. E[n]/tau >= min(isr cap, rate cap) along the given greedy trajectory.
// When it holds in every slot the greedy allocation is optimal.
inline SlotScan energy_never_binding(const ScenarioConfig& cfg,
                                     const GreedyResult& g) {
    SlotScan scan;
    scan.per_slot.resize(cfg.N);
    scan.all = true;
    SlotState s{cfg.Ea0, cfg.Q0};
    for (std::size_t n = 1; n <= cfg.N; ++n) {
        s.Q = std::max(g.schedule.q_traj[n - 1], 0.0);
        const ConstraintCaps caps = merged_caps(s, n, cfg);
        const bool ok = caps.energy >= std::min(caps.isr, caps.rate);
        scan.per_slot[n - 1] = ok;
        scan.all = scan.all && ok;
        s.E = s.E - g.schedule.P[n - 1] * cfg.tau + cfg.Ea[n - 1];
    }
    return scan;
}

}  // namespace crsched
