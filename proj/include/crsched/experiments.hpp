#pragma once

// Canned scenario definitions and sweep drivers. The two staged examples and
// the fig3/fig4/fig5 sweeps are fixed three-slot instances; sweep points are
// evaluated independently and reported in input order.
//
// Shared defaults across the fig scenarios: tau = 1, rho = 0.1, and ISR power
// caps rho * P0 * g11 / g21 = 0.1 * [100, 420, 200] = [10, 42, 20].

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "crsched/bounds.hpp"
#include "crsched/greedy.hpp"
#include "crsched/model.hpp"
#include "crsched/realloc.hpp"

namespace crsched {

namespace detail {

inline ScenarioConfig fig_base() {
    ScenarioConfig cfg;
    cfg.N = 3;
    cfg.tau = 1.0;
    cfg.rho = 0.1;
    cfg.P0 = 1.0;
    cfg.g11 = {100.0, 420.0, 200.0};
    cfg.g21 = {1.0, 1.0, 1.0};
    return cfg;
}

}  // namespace detail

// Staged-example instances: N = 3, Ea0 = 1, Ea = [1, 2, 1], no queue data.
inline ScenarioConfig example_config(int id) {
    ScenarioConfig cfg;
    cfg.N = 3;
    cfg.tau = 1.0;
    cfg.relaxed = true;
    cfg.Ea0 = 1.0;
    cfg.Ea = {1.0, 2.0, 1.0};
    cfg.Da = {0.0, 0.0, 0.0};
    cfg.Q0 = 0.0;
    if (id == 1)
        cfg.alpha_direct = {1.0 / 12.0, 1.0 / 7.0, 1.0 / 2.0};
    else if (id == 2)
        cfg.alpha_direct = {1.0 / 10.0, 1.0 / 5.0, 1.0 / 6.0};
    else
        throw std::invalid_argument("example_config: unknown id");
    cfg.validate();
    return cfg;
}

// Channel sweep: slot-3 SNR coefficient varies, energy and data fixed.
inline ScenarioConfig fig3_config(double alpha3) {
    ScenarioConfig cfg = detail::fig_base();
    cfg.alpha_direct = {1.0 / 80.0, 1.0 / 30.0, alpha3};
    cfg.Ea0 = 12.0;
    cfg.Ea = {20.0, 25.0, 18.0};
    cfg.Q0 = 1.0;
    cfg.Da = {1.0, 1.0, 3.0};
    cfg.validate();
    return cfg;
}

// Energy sweep: arrivals scale with the mean arrival, split 1/4, 1/4, 1/2, 0.
inline ScenarioConfig fig4_config(double mean_Ea) {
    ScenarioConfig cfg = detail::fig_base();
    cfg.alpha_direct = {1.0 / 15.0, 1.0 / 16.0, 0.8};
    cfg.Ea0 = mean_Ea / 4.0;
    cfg.Ea = {mean_Ea / 4.0, mean_Ea / 2.0, 0.0};
    cfg.Q0 = 2.0;
    cfg.Da = {1.0, 2.0, 5.0};
    cfg.validate();
    return cfg;
}

// Data sweep: arrivals split 0.3, 0.2, 0.5 of the sweep value.
inline ScenarioConfig fig5_config(double mean_Da) {
    ScenarioConfig cfg = detail::fig_base();
    cfg.alpha_direct = {1.0 / 15.0, 1.0 / 3.0, 0.5};
    cfg.Ea0 = 8.0;
    cfg.Ea = {12.0, 10.0, 1.0};
    cfg.Q0 = 0.0;
    cfg.Da = {0.3 * mean_Da, 0.2 * mean_Da, 0.5 * mean_Da};
    cfg.validate();
    return cfg;
}

inline ReallocTrace run_example(int id) {
    return reallocate_power(example_config(id)).trace;
}

struct SweepRow {
    double parameter = 0.0;
    GreedyResult greedy;
    ReallocResult realloc;
    std::optional<GreedyResult> greedy_relaxed;  // only when requested
};

// A sweep request: which canned parameter varies, the points to visit, and
// which algorithms to evaluate. Points are evaluated independently and rows
// come back in input order.
enum class SweepParameter { SlotThreeAlpha, MeanEnergyArrival, MeanDataArrival };

struct SweepSpec {
    SweepParameter parameter = SweepParameter::SlotThreeAlpha;
    std::vector<double> values;
    bool want_greedy = true;
    bool want_greedy_relaxed = false;
    bool want_realloc = true;
};

namespace detail {

template <typename MakeConfig>
inline std::vector<SweepRow> run_sweep(const std::vector<double>& values,
                                       MakeConfig make_config,
                                       bool with_relaxed = false) {
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double v : values) {
        const ScenarioConfig cfg = make_config(v);
        SweepRow row;
        row.parameter = v;
        row.greedy = greedy_allocate(cfg);
        row.realloc = reallocate_power(cfg);
        if (with_relaxed) row.greedy_relaxed = greedy_allocate_relaxed(cfg);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

inline std::vector<SweepRow> run_fig3(const std::vector<double>& alpha3_values,
                                      bool with_relaxed = false) {
    for (double v : alpha3_values)
        if (!(v > 0.0) || v > 1.0)
            throw std::domain_error("run_fig3: alpha3 must be in (0, 1]");
    return detail::run_sweep(alpha3_values, fig3_config, with_relaxed);
}

inline std::vector<SweepRow> run_fig4(const std::vector<double>& mean_Ea_values,
                                      bool with_relaxed = false) {
    for (double v : mean_Ea_values)
        if (!(v > 0.0)) throw std::domain_error("run_fig4: mean Ea must be > 0");
    return detail::run_sweep(mean_Ea_values, fig4_config, with_relaxed);
}

inline std::vector<SweepRow> run_fig5(const std::vector<double>& mean_Da_values,
                                      bool with_relaxed = false) {
    for (double v : mean_Da_values)
        if (v < 0.0) throw std::domain_error("run_fig5: mean Da must be >= 0");
    return detail::run_sweep(mean_Da_values, fig5_config, with_relaxed);
}

inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    const bool relaxed = spec.want_greedy_relaxed;
    switch (spec.parameter) {
        case SweepParameter::SlotThreeAlpha:
            return run_fig3(spec.values, relaxed);
        case SweepParameter::MeanEnergyArrival:
            return run_fig4(spec.values, relaxed);
        default:
            return run_fig5(spec.values, relaxed);
    }
}

inline std::vector<double> fig3_default_points() {
    return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
}

inline std::vector<double> fig4_default_points() {
    return {4.0, 6.0, 8.0, 9.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0};
}

inline std::vector<double> fig5_default_points() {
    return {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0, 10.0};
}

}  // namespace crsched
