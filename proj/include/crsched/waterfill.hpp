#pragma once

// Weighted water-filling over a window of slots: maximize
// sum_q beta_q * log(alpha_q * P[q] + 1) subject to P >= 0 and
// sum_q P[q] == budget. At the optimum every supported slot sits at a common
// weighted level L = P[q]/beta_q + gamma_q with gamma_q = 1/(alpha_q*beta_q),
// so P[q] = max(beta_q * (L - gamma_q), 0).
//
// The level is found by a closed-form segment walk over the window's slots in
// ascending-gamma order; time order is restored afterwards. An independent
// bisection solver for the same subproblem lives in oracle.hpp.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "crsched/model.hpp"

namespace crsched {

// Per-slot coefficients of the equivalent weighted-throughput problem:
// alpha[n] is the effective SNR per watt, beta[n] = (N+1-n)/N is the
// objective weight of slot n's rate, gamma[n] = 1/(alpha[n]*beta[n]).
struct WeightedSlots {
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> gamma;
};

inline WeightedSlots compute_weights(const ScenarioConfig& cfg) {
    WeightedSlots w;
    w.alpha.resize(cfg.N);
    w.beta.resize(cfg.N);
    w.gamma.resize(cfg.N);
    for (std::size_t n = 1; n <= cfg.N; ++n) {
        w.alpha[n - 1] = cfg.alpha(n);
        w.beta[n - 1] = static_cast<double>(cfg.N + 1 - n) / static_cast<double>(cfg.N);
        w.gamma[n - 1] = 1.0 / (w.alpha[n - 1] * w.beta[n - 1]);
    }
    return w;
}

// Allocation of one budget over a window. P is in window-relative time order.
// support is the number of slots with water in ascending-gamma order; level
// is the common weighted water level they share.
struct WaterfillResult {
    std::vector<double> P;
    double level = 0.0;
    std::size_t support = 0;
};

namespace detail {

// Walk the water level across the sorted gamma segments until the budget is
// exhausted. gamma/beta are in ascending-gamma order; returns {level, support}.
inline std::pair<double, std::size_t> level_walk(const std::vector<double>& gamma,
                                                 const std::vector<double>& beta,
                                                 double budget) {
    const std::size_t m = gamma.size();
    double cum_beta = 0.0;
    double remaining = budget;  // budget left above level gamma[q]
    for (std::size_t q = 0; q < m; ++q) {
        cum_beta += beta[q];
        if (q + 1 == m) return {gamma[q] + remaining / cum_beta, q + 1};
        const double fill = (gamma[q + 1] - gamma[q]) * cum_beta;
        if (remaining - fill > 0.0) {
            remaining -= fill;
        } else {
            return {gamma[q] + remaining / cum_beta, q + 1};
        }
    }
    return {gamma.empty() ? 0.0 : gamma.back(), m};  // unreachable for m >= 1
}

}  // namespace detail

// first/last are inclusive 0-based indices into the weight vectors.
inline WaterfillResult waterfill_window(const WeightedSlots& w,
                                        std::size_t first, std::size_t last,
                                        double budget) {
    if (budget < 0.0) throw std::domain_error("waterfill_window: negative budget");
    if (last < first || last >= w.gamma.size())
        throw std::domain_error("waterfill_window: bad window");
    const std::size_t m = last - first + 1;

    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return w.gamma[first + a] < w.gamma[first + b];
    });
    std::vector<double> gamma_sorted(m), beta_sorted(m);
    for (std::size_t i = 0; i < m; ++i) {
        gamma_sorted[i] = w.gamma[first + order[i]];
        beta_sorted[i] = w.beta[first + order[i]];
    }

    auto [level, support] = detail::level_walk(gamma_sorted, beta_sorted, budget);

    WaterfillResult r;
    r.level = level;
    r.support = support;
    r.P.resize(m);
    for (std::size_t i = 0; i < m; ++i)
        r.P[i] = std::max(w.beta[first + i] * (level - w.gamma[first + i]), 0.0);
    return r;
}

}  // namespace crsched
