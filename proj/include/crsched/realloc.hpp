#pragma once

// Offline power re-allocation under cumulative energy budgets: the optimal
// solution of
//   max sum_n beta_n log(alpha_n P[n] + 1)
//   s.t. P >= 0,  sum_{n<=l} P[n]*tau <= Ea0 + sum_{n<l} Ea[n]  for all l,
// built stage by stage. Stage k introduces the energy that became usable at
// slot k and re-water-fills a suffix window [r..k], expanding r backwards
// until the window's water level is at least the level of the last loaded
// slot before it. Accepting at the first such r keeps the level profile
// non-decreasing in time, which is exactly what the causal budgets require.
//
// The schedule's rates are NOT clamped to the queue: the queue trajectory may
// go negative and the resulting objective is the lower bound on the optimal
// average buffer length. A clamped re-simulation is available separately for
// diagnostics.

#include <cstddef>
#include <vector>

#include "crsched/model.hpp"
#include "crsched/waterfill.hpp"

namespace crsched {

// Stage-by-stage allocation trace: stages[k-1] is the length-k allocation
// after stage k; accepted_r[k-2] is the 1-based window start accepted at
// stage k (k >= 2).
struct ReallocTrace {
    std::vector<std::vector<double>> stages;
    std::vector<std::size_t> accepted_r;
};

struct ReallocResult {
    Schedule schedule;
    ReallocTrace trace;
};

namespace detail {

// Weighted level of slot q (0-based) under allocation P.
inline double slot_level(const WeightedSlots& w, const std::vector<double>& P,
                         std::size_t q) {
    return w.gamma[q] + P[q] / w.beta[q];
}

}  // namespace detail

inline ReallocResult reallocate_power(const ScenarioConfig& cfg) {
    const WeightedSlots w = compute_weights(cfg);
    const std::size_t N = cfg.N;

    ReallocResult out;
    std::vector<double> cur(N, 0.0);
    cur[0] = cfg.Ea0 / cfg.tau;
    out.trace.stages.push_back({cur[0]});

    for (std::size_t k = 2; k <= N; ++k) {
        const std::vector<double> prev = cur;
        const double fresh = cfg.Ea[k - 2] / cfg.tau;  // usable from slot k on
        for (std::size_t r = k; r >= 1; --r) {
            double budget = fresh;
            for (std::size_t i = r; i <= k - 1; ++i) budget += prev[i - 1];
            const WaterfillResult wf = waterfill_window(w, r - 1, k - 1, budget);

            bool accept = true;
            if (r > 1) {
                // level of the last loaded slot before the window; when no
                // earlier slot holds energy there is nothing the window could
                // pull forward, so the test passes trivially
                std::size_t q_e = 0;
                for (std::size_t q = r - 1; q >= 1; --q) {
                    if (prev[q - 1] > 0.0) {
                        q_e = q;
                        break;
                    }
                }
                if (q_e != 0)
                    accept = wf.level >= detail::slot_level(w, prev, q_e - 1);
            }
            if (accept) {
                for (std::size_t i = 0; i < wf.P.size(); ++i)
                    cur[r - 1 + i] = wf.P[i];
                out.trace.accepted_r.push_back(r);
                break;
            }
        }
        out.trace.stages.emplace_back(cur.begin(), cur.begin() + k);
    }

    out.schedule = make_schedule(cfg, cur);
    return out;
}

// Lower-bound objective (unclamped rates, as produced by reallocate_power)
// together with a clamped re-simulation where R[n] <- min(R[n], Q[n]). The
// clamped value is a diagnostic only; the bound is the first field.
struct ReallocObjectives {
    double lower_bound = 0.0;
    double clamped = 0.0;
};

inline ReallocObjectives pa_objectives(const ScenarioConfig& cfg,
                                       const Schedule& s) {
    ReallocObjectives o;
    o.lower_bound = s.objective;
    double q = cfg.Q0;
    double sum = q;
    for (std::size_t n = 0; n < cfg.N; ++n) {
        q = q - std::min(s.R[n], q) + cfg.Da[n];
        sum += q;
    }
    o.clamped = sum / static_cast<double>(cfg.N);
    return o;
}

}  // namespace crsched
