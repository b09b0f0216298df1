#pragma once

// Core problem data and slot dynamics for an underlay secondary link powered
// by harvested energy: battery/queue recursions, the log rate law, and the
// per-slot power caps (battery drain, interference-to-signal ratio at the
// primary receiver, queue-emptying rate).
//
// Conventions used throughout the library:
//   - slots are numbered 1..N in reports and docs, stored 0-based in vectors;
//   - Ea[n] and Da[n] arrive at the END of slot n, so they are first usable
//     in slot n+1; Ea0 is the energy already banked when slot 1 starts;
//   - the configured initial queue Q0 is the queue at the start of slot 1;
//   - trajectories have N+1 entries: index n is the state entering slot n+1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace crsched {

struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Full problem instance. Channel data may be given either as raw gain traces
// (g11, g12, g21, g22 with P0, N0) or directly as the per-watt effective SNR
// trace alpha[n] = g22[n] / (P0*g12[n] + N0). When both are present, alpha
// wins (the parser reports a warning).
struct ScenarioConfig {
    std::size_t N = 0;       // horizon, decision slots
    double tau = 1.0;        // slot length, seconds
    double log_base = 2.718281828459045235;  // rate-law logarithm base

    double Ea0 = 0.0;          // energy banked before slot 1, joules
    std::vector<double> Ea;    // Ea[n-1] arrives at end of slot n, joules
    std::vector<double> Da;    // Da[n-1] arrives at end of slot n
    double Q0 = 0.0;           // queue at start of slot 1

    std::vector<double> alpha_direct;  // optional, wins over gain traces
    std::optional<double> P0;          // primary transmit power, watts
    std::optional<double> N0;          // receiver noise variance, watts
    std::vector<double> g11, g12, g21, g22;  // per-slot power gains

    std::optional<double> rho;  // ISR threshold at the primary receiver
    bool relaxed = false;       // drop the ISR cap (no PU-side information)

    bool has_alpha() const {
        return !alpha_direct.empty() || (!g22.empty() && !g12.empty() && P0 && N0);
    }
    bool has_isr() const { return rho && P0 && !g11.empty() && !g21.empty(); }

    // alpha_n for 1-based slot n
    double alpha(std::size_t n) const {
        if (!alpha_direct.empty()) return alpha_direct[n - 1];
        return g22[n - 1] / (*P0 * g12[n - 1] + *N0);
    }

    // rho * P0 * g11[n] / g21[n]; +infinity when the secondary causes no
    // interference (g21[n] == 0)
    double isr_cap(std::size_t n) const {
        const double denom = g21[n - 1];
        if (denom == 0.0) return std::numeric_limits<double>::infinity();
        return *rho * *P0 * g11[n - 1] / denom;
    }

    void validate() const;
};

// Battery energy and queue length at the start of a slot.
struct SlotState {
    double E = 0.0;
    double Q = 0.0;
};

enum class CapKind { Energy, Isr, Rate };

inline const char* cap_name(CapKind k) {
    switch (k) {
        case CapKind::Energy: return "energy";
        case CapKind::Isr: return "isr";
        default: return "rate";
    }
}

// The three per-slot caps on transmit power, their minimum (the merged cap),
// and the relaxed merged cap that ignores the ISR term.
struct ConstraintCaps {
    double energy = 0.0;   // E[n] / tau
    double isr = 0.0;      // rho * P0 * g11[n] / g21[n]
    double rate = 0.0;     // power that empties the queue in one slot
    double merged = 0.0;   // min of the three
    double merged_no_isr = 0.0;  // min(energy, rate)
    CapKind active = CapKind::Energy;
};

using ConstraintProfile = std::vector<ConstraintCaps>;

// A power schedule with its derived rates, queue trajectory (N+1 entries,
// q_traj[0] == Q0), and average-buffer-length objective.
struct Schedule {
    std::vector<double> P;
    std::vector<double> R;
    std::vector<double> q_traj;
    double objective = 0.0;
};

// --- rate law -------------------------------------------------------------

// log_base(alpha * P + 1); strictly increasing and concave in P, rate(0) = 0.
inline double rate(double P, double alpha, double log_base) {
    if (P < 0.0) throw std::domain_error("rate: negative power");
    return std::log1p(alpha * P) / std::log(log_base);
}

inline double rate(double P, double g22, double g12, double P0, double N0,
                   double log_base) {
    return rate(P, g22 / (P0 * g12 + N0), log_base);
}

// Inverse of the rate law: the power whose rate is R.
inline double inverse_rate(double R, double alpha, double log_base) {
    if (R < 0.0) throw std::domain_error("inverse_rate: negative rate");
    return std::expm1(R * std::log(log_base)) / alpha;
}

inline double inverse_rate(double R, double g22, double g12, double P0,
                           double N0, double log_base) {
    return std::expm1(R * std::log(log_base)) * (P0 * g12 + N0) / g22;
}

// --- caps -----------------------------------------------------------------

enum class IsrMode { Enforce, Ignore };

// Caps for 1-based slot n given the state entering it. Q may be negative for
// relaxed trajectories; the rate cap is then negative and the merged value
// reflects it (callers that need a feasible power clamp at zero themselves).
inline ConstraintCaps merged_caps(const SlotState& s, std::size_t n,
                                  const ScenarioConfig& cfg,
                                  IsrMode mode = IsrMode::Enforce) {
    ConstraintCaps c;
    c.energy = s.E / cfg.tau;
    c.isr = (mode == IsrMode::Ignore || cfg.relaxed)
                ? std::numeric_limits<double>::infinity()
                : cfg.isr_cap(n);
    c.rate = std::expm1(s.Q * std::log(cfg.log_base)) / cfg.alpha(n);
    c.merged = std::min({c.energy, c.isr, c.rate});
    c.merged_no_isr = std::min(c.energy, c.rate);
    // tie-break priority: energy > isr > rate
    if (c.merged == c.energy)
        c.active = CapKind::Energy;
    else if (c.merged == c.isr)
        c.active = CapKind::Isr;
    else
        c.active = CapKind::Rate;
    return c;
}

// --- dynamics -------------------------------------------------------------

// Absolute slack allowed when checking feasibility of float-tight schedules.
inline double feas_tol(double scale) { return 1e-9 * std::max(1.0, scale); }

// Advance one slot: spend P for tau seconds, then bank the end-of-slot
// arrivals. Throws when the battery cannot cover P*tau; the queue check is
// enforced only in strict mode (relaxed trajectories may overdraw the queue).
inline SlotState step(const SlotState& s, std::size_t n, double P, double Ea_n,
                      double Da_n, const ScenarioConfig& cfg,
                      bool strict_rate = true) {
    if (P < 0.0) throw std::domain_error("step: negative power");
    if (P * cfg.tau > s.E + feas_tol(s.E))
        throw InfeasibleError("step: allocated energy exceeds the battery");
    const double R = rate(P, cfg.alpha(n), cfg.log_base);
    if (strict_rate && R > s.Q + feas_tol(s.Q))
        throw InfeasibleError("step: rate exceeds the queued data");
    SlotState next;
    next.E = s.E - P * cfg.tau + Ea_n;
    next.Q = s.Q - R + Da_n;
    if (next.E < 0.0 && next.E > -feas_tol(s.E)) next.E = 0.0;
    return next;
}

// (1/N) * sum of the N+1 trajectory entries.
inline double objective(const std::vector<double>& q_traj) {
    if (q_traj.size() < 2)
        throw std::domain_error("objective: trajectory needs N+1 >= 2 entries");
    double sum = 0.0;
    for (double q : q_traj) sum += q;
    return sum / static_cast<double>(q_traj.size() - 1);
}

// Queue trajectory from the rate vector: N+1 entries starting at Q0.
inline std::vector<double> queue_trajectory(const ScenarioConfig& cfg,
                                            const std::vector<double>& R) {
    std::vector<double> q(cfg.N + 1);
    q[0] = cfg.Q0;
    for (std::size_t n = 0; n < cfg.N; ++n) q[n + 1] = q[n] - R[n] + cfg.Da[n];
    return q;
}

// Battery trajectory from the power vector: N+1 entries starting at Ea0.
inline std::vector<double> battery_trajectory(const ScenarioConfig& cfg,
                                              const std::vector<double>& P) {
    std::vector<double> e(cfg.N + 1);
    e[0] = cfg.Ea0;
    for (std::size_t n = 0; n < cfg.N; ++n)
        e[n + 1] = e[n] - P[n] * cfg.tau + cfg.Ea[n];
    return e;
}

inline std::vector<double> rates_for(const ScenarioConfig& cfg,
                                     const std::vector<double>& P) {
    std::vector<double> r(cfg.N);
    for (std::size_t n = 0; n < cfg.N; ++n)
        r[n] = rate(P[n], cfg.alpha(n + 1), cfg.log_base);
    return r;
}

inline Schedule make_schedule(const ScenarioConfig& cfg,
                              std::vector<double> P) {
    Schedule s;
    s.P = std::move(P);
    s.R = rates_for(cfg, s.P);
    s.q_traj = queue_trajectory(cfg, s.R);
    s.objective = objective(s.q_traj);
    return s;
}

// --- validation -----------------------------------------------------------

inline void ScenarioConfig::validate() const {
    auto fail = [](const std::string& what) {
        throw std::invalid_argument("ScenarioConfig: " + what);
    };
    if (N < 1) fail("N must be >= 1");
    if (!(tau > 0.0)) fail("tau must be > 0");
    if (!(log_base > 1.0)) fail("log_base must be > 1");
    if (Ea0 < 0.0 || Q0 < 0.0) fail("Ea0 and Q0 must be >= 0");
    auto check_trace = [&](const std::vector<double>& v, const char* name,
                           bool required, bool strictly_positive = false) {
        if (v.empty()) {
            if (required) fail(std::string("missing trace ") + name);
            return;
        }
        if (v.size() != N) fail(std::string("trace length mismatch: ") + name);
        for (double x : v) {
            if (x < 0.0) fail(std::string("negative value in ") + name);
            if (strictly_positive && x == 0.0)
                fail(std::string("zero value in ") + name);
        }
    };
    check_trace(Ea, "Ea", true);
    check_trace(Da, "Da", true);
    if (!has_alpha()) fail("channel data required (alpha or g22/g12/P0/N0)");
    check_trace(alpha_direct, "alpha", false, true);
    check_trace(g12, "g12", false);
    check_trace(g22, "g22", false, true);
    check_trace(g11, "g11", false, true);
    check_trace(g21, "g21", false);
    if (P0 && *P0 < 0.0) fail("negative P0");
    if (N0 && *N0 < 0.0) fail("negative N0");
    if (rho && *rho < 0.0) fail("negative rho");
    if (alpha_direct.empty() && !g22.empty() && !g12.empty() && P0 && N0) {
        for (std::size_t n = 0; n < N; ++n)
            if (*P0 * g12[n] + *N0 <= 0.0)
                fail("P0*g12[n]+N0 must be positive to derive alpha");
    }
    if (!relaxed && !has_isr())
        fail("ISR data required (rho, P0, g11, g21) unless relaxed");
}

}  // namespace crsched
