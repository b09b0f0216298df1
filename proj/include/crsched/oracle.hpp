#pragma once

// Independent ground-truth solvers for desk-scale validation.
//
//   grid_optimal_relaxed  exhaustive search over the cumulative-budget
//                         polytope (prefix energy sums on a grid), maximizing
//                         the weighted log throughput; validates the staged
//                         re-allocation.
//   grid_optimal_full     tree enumeration of the state-dependent feasible
//                         set (caps recomputed along every branch, cap
//                         endpoint included), minimizing the average buffer
//                         length; sandwiches greedy and the re-allocation.
//   bisection_waterfill   level bisection for the window subproblem; checks
//                         the closed-form segment walk.
//
// Horizons are capped hard: the enumeration is exponential by design.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "crsched/model.hpp"
#include "crsched/waterfill.hpp"

namespace crsched {

struct OracleRefusal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    double resolution = 1e-2;  // grid step, power units
    std::size_t max_N = 3;     // refuse horizons beyond this (hard cap 4)
};

struct OracleResult {
    Schedule schedule;
    double weighted_value = 0.0;  // sum beta_n log(alpha_n P[n] + 1), natural log
    double objective = 0.0;       // average buffer length of the schedule
};

// Loss bound of the grid search in weighted-log units: rounding each prefix
// sum down to the grid perturbs every P[n] by at most `resolution`, and the
// integrand slope in P[n] is at most beta_n * alpha_n.
inline double oracle_resolution_bound(const ScenarioConfig& cfg,
                                      const GridSpec& grid) {
    const WeightedSlots w = compute_weights(cfg);
    double sum = 0.0;
    for (std::size_t n = 0; n < cfg.N; ++n) sum += w.beta[n] * w.alpha[n];
    return grid.resolution * sum;
}

namespace detail {

inline void check_grid(const ScenarioConfig& cfg, const GridSpec& grid) {
    if (!(grid.resolution > 0.0))
        throw std::domain_error("GridSpec: resolution must be > 0");
    const std::size_t cap = std::min<std::size_t>(grid.max_N, 4);
    if (cfg.N > cap)
        throw OracleRefusal("oracle: horizon exceeds the enumeration cap");
}

}  // namespace detail

inline OracleResult grid_optimal_relaxed(const ScenarioConfig& cfg,
                                         const GridSpec& grid) {
    detail::check_grid(cfg, grid);
    const WeightedSlots w = compute_weights(cfg);
    const std::size_t N = cfg.N;
    const double h = grid.resolution;

    // cumulative power budgets B[l] = (Ea0 + sum_{n<l} Ea[n]) / tau
    std::vector<double> budget(N);
    double acc = cfg.Ea0;
    for (std::size_t l = 0; l < N; ++l) {
        budget[l] = acc / cfg.tau;
        if (l + 1 < N) acc += cfg.Ea[l];
    }

    auto slot_value = [&](std::size_t n, double P) {
        return w.beta[n] * std::log1p(w.alpha[n] * P);
    };

    // Prefix sums s_1..s_{N-1} walk the grid; the final prefix is pinned to
    // the full budget, which any maximizer exhausts (the objective is
    // strictly increasing in P[N]).
    std::vector<double> best_P;
    double best_value = -1.0;
    std::vector<double> prefix(N + 1, 0.0);
    std::vector<double> powers(N, 0.0);

    auto recurse = [&](auto&& self, std::size_t n, double partial) -> void {
        if (n == N - 1) {
            const double P_last = budget[N - 1] - prefix[n];
            if (P_last < -feas_tol(budget[N - 1])) return;
            powers[n] = std::max(P_last, 0.0);
            const double value = partial + slot_value(n, powers[n]);
            if (value > best_value ||
                (value == best_value && powers < best_P)) {
                best_value = value;
                best_P = powers;
            }
            return;
        }
        const double lo = prefix[n];
        const std::size_t steps =
            static_cast<std::size_t>(std::floor((budget[n] - lo) / h + 1e-12));
        for (std::size_t j = 0; j <= steps; ++j) {
            const double P = static_cast<double>(j) * h;
            prefix[n + 1] = lo + P;
            powers[n] = P;
            self(self, n + 1, partial + slot_value(n, P));
        }
        // budget endpoint, usually off-grid
        const double P_edge = budget[n] - lo;
        if (P_edge > static_cast<double>(steps) * h) {
            prefix[n + 1] = budget[n];
            powers[n] = P_edge;
            self(self, n + 1, partial + slot_value(n, P_edge));
        }
    };

    if (N == 1) {
        best_P = {budget[0]};
        best_value = slot_value(0, budget[0]);
    } else {
        recurse(recurse, 0, 0.0);
    }

    OracleResult r;
    r.schedule = make_schedule(cfg, best_P);
    r.weighted_value = best_value;
    r.objective = r.schedule.objective;
    return r;
}

inline OracleResult grid_optimal_full(const ScenarioConfig& cfg,
                                      const GridSpec& grid) {
    detail::check_grid(cfg, grid);
    const std::size_t N = cfg.N;
    const double h = grid.resolution;
    const double ln_base = std::log(cfg.log_base);

    // per-slot rate table for grid multiples, sized by the total energy that
    // could ever be in the battery
    double e_max = cfg.Ea0;
    for (double e : cfg.Ea) e_max += e;
    const std::size_t table_len =
        static_cast<std::size_t>(std::floor(e_max / cfg.tau / h)) + 2;
    std::vector<std::vector<double>> rate_table(N);
    for (std::size_t n = 0; n < N; ++n) {
        rate_table[n].resize(table_len);
        const double a = cfg.alpha(n + 1);
        for (std::size_t j = 0; j < table_len; ++j)
            rate_table[n][j] = std::log1p(a * static_cast<double>(j) * h) / ln_base;
    }

    std::vector<double> best_P;
    double best_objective = std::numeric_limits<double>::infinity();
    std::vector<double> powers(N, 0.0);

    auto recurse = [&](auto&& self, std::size_t n, SlotState s,
                       double q_sum) -> void {
        if (n == N) {
            const double value = (q_sum + s.Q) / static_cast<double>(N);
            if (value < best_objective ||
                (value == best_objective && powers < best_P)) {
                best_objective = value;
                best_P = powers;
            }
            return;
        }
        const ConstraintCaps caps = merged_caps(s, n + 1, cfg);
        const double cap = std::max(caps.merged, 0.0);
        const std::size_t steps =
            static_cast<std::size_t>(std::floor(cap / h + 1e-12));
        for (std::size_t j = 0; j <= steps; ++j) {
            const double P = static_cast<double>(j) * h;
            powers[n] = P;
            SlotState next{s.E - P * cfg.tau + cfg.Ea[n],
                           s.Q - rate_table[n][j] + cfg.Da[n]};
            next.Q = std::max(next.Q, 0.0);
            self(self, n + 1, next, q_sum + s.Q);
        }
        if (cap > static_cast<double>(steps) * h) {
            powers[n] = cap;
            const double R = std::log1p(cfg.alpha(n + 1) * cap) / ln_base;
            SlotState next{std::max(s.E - cap * cfg.tau, 0.0) + cfg.Ea[n],
                           std::max(s.Q - R, 0.0) + cfg.Da[n]};
            self(self, n + 1, next, q_sum + s.Q);
        }
    };
    recurse(recurse, 0, SlotState{cfg.Ea0, cfg.Q0}, 0.0);

    OracleResult r;
    r.schedule = make_schedule(cfg, best_P);
    r.objective = best_objective;
    const WeightedSlots w = compute_weights(cfg);
    for (std::size_t n = 0; n < N; ++n)
        r.weighted_value += w.beta[n] * std::log1p(w.alpha[n] * best_P[n]);
    return r;
}

// Level bisection for the window subproblem. The level lies in
// [min gamma, min gamma + budget/min beta]; allocations are within
// max(beta) * (final interval width) of the exact ones per slot.
inline WaterfillResult bisection_waterfill(const WeightedSlots& w,
                                           std::size_t first, std::size_t last,
                                           double budget, double tol) {
    if (budget < 0.0)
        throw std::domain_error("bisection_waterfill: negative budget");
    if (!(tol > 0.0)) throw std::domain_error("bisection_waterfill: bad tol");
    if (last < first || last >= w.gamma.size())
        throw std::domain_error("bisection_waterfill: bad window");

    double gamma_min = w.gamma[first];
    double beta_min = w.beta[first];
    for (std::size_t q = first; q <= last; ++q) {
        gamma_min = std::min(gamma_min, w.gamma[q]);
        beta_min = std::min(beta_min, w.beta[q]);
    }
    auto poured = [&](double level) {
        double total = 0.0;
        for (std::size_t q = first; q <= last; ++q)
            total += std::max(w.beta[q] * (level - w.gamma[q]), 0.0);
        return total;
    };

    double lo = gamma_min;
    double hi = gamma_min + budget / beta_min;
    double level = lo;
    for (int iter = 0; iter < 200; ++iter) {
        level = 0.5 * (lo + hi);
        const double total = poured(level);
        if (std::abs(total - budget) <= tol && hi - lo <= tol) break;
        if (total > budget)
            hi = level;
        else
            lo = level;
    }

    WaterfillResult r;
    r.level = level;
    r.P.resize(last - first + 1);
    r.support = 0;
    for (std::size_t q = first; q <= last; ++q) {
        r.P[q - first] = std::max(w.beta[q] * (level - w.gamma[q]), 0.0);
        if (r.P[q - first] > 0.0) ++r.support;
    }
    return r;
}

}  // namespace crsched
