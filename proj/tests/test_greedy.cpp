#include <catch2/catch.hpp>

#include <cmath>
#include <random>

#include "crsched/experiments.hpp"
#include "crsched/greedy.hpp"
#include "crsched/oracle.hpp"

using namespace crsched;

namespace {

ScenarioConfig isr_config() {
    ScenarioConfig cfg;
    cfg.N = 3;
    cfg.Ea0 = 1.0;
    cfg.Ea = {0.8, 0.5, 0.3};
    cfg.Da = {0.5, 0.4, 0.6};
    cfg.Q0 = 0.7;
    cfg.alpha_direct = {0.6, 1.2, 0.9};
    cfg.rho = 0.1;
    cfg.P0 = 1.0;
    cfg.g11 = {8.0, 5.0, 12.0};
    cfg.g21 = {1.0, 1.0, 1.0};
    cfg.validate();
    return cfg;
}

ScenarioConfig random_instance(std::mt19937& rng) {
    std::uniform_int_distribution<int> n_d(1, 3);
    std::uniform_real_distribution<double> e_d(0.05, 0.45), q_d(0.0, 1.2),
        a_d(0.4, 2.0), isr_d(0.15, 1.2);
    ScenarioConfig cfg;
    cfg.N = static_cast<std::size_t>(n_d(rng));
    cfg.Ea0 = e_d(rng);
    cfg.Q0 = q_d(rng);
    cfg.rho = 0.1;
    cfg.P0 = 1.0;
    for (std::size_t n = 0; n < cfg.N; ++n) {
        cfg.Ea.push_back(e_d(rng));
        cfg.Da.push_back(q_d(rng) * 0.5);
        cfg.alpha_direct.push_back(a_d(rng));
        cfg.g11.push_back(isr_d(rng) / *cfg.rho);
        cfg.g21.push_back(1.0);
    }
    cfg.validate();
    return cfg;
}

void check_feasible(const ScenarioConfig& cfg, const GreedyResult& g) {
    const std::vector<double> e = battery_trajectory(cfg, g.schedule.P);
    for (std::size_t n = 0; n < cfg.N; ++n) {
        const double P = g.schedule.P[n];
        CHECK(P >= 0.0);
        CHECK(P * cfg.tau <= e[n] + feas_tol(e[n]));
        if (cfg.has_isr() && !cfg.relaxed)
            CHECK(P <= cfg.isr_cap(n + 1) + feas_tol(P));
        CHECK(g.schedule.R[n] <=
              std::max(g.schedule.q_traj[n], 0.0) + feas_tol(1.0));
        CHECK(g.schedule.q_traj[n] >= -1e-12);
    }
}

}  // namespace

TEST_CASE("greedy with no energy transmits nothing", "[greedy]") {
    ScenarioConfig cfg = isr_config();
    cfg.Ea0 = 0.0;
    cfg.Ea = {0.0, 0.0, 0.0};
    const GreedyResult g = greedy_allocate(cfg);
    double running = cfg.Q0;
    for (std::size_t n = 0; n < cfg.N; ++n) {
        CHECK(g.schedule.P[n] == 0.0);
        CHECK(g.schedule.q_traj[n] == running);
        running += cfg.Da[n];
    }
    CHECK(g.schedule.q_traj[cfg.N] == running);
}

TEST_CASE("greedy with an empty buffer transmits nothing", "[greedy]") {
    ScenarioConfig cfg = isr_config();
    cfg.Q0 = 0.0;
    cfg.Da = {0.0, 0.0, 5.0};  // the last arrival lands after the horizon
    const GreedyResult g = greedy_allocate(cfg);
    for (std::size_t n = 0; n < cfg.N; ++n) {
        CHECK(g.schedule.P[n] == 0.0);
        CHECK(g.profile[n].active == CapKind::Rate);
    }
}

TEST_CASE("greedy is feasible and per-slot maximal", "[greedy]") {
    std::mt19937 rng(21);
    for (int t = 0; t < 150; ++t) {
        const ScenarioConfig cfg = random_instance(rng);
        const GreedyResult g = greedy_allocate(cfg);
        check_feasible(cfg, g);
        // any epsilon more power violates at least one constraint
        const std::vector<double> e = battery_trajectory(cfg, g.schedule.P);
        for (std::size_t n = 0; n < cfg.N; ++n) {
            const double P = g.schedule.P[n];
            const double bumped = P + 1e-9 * std::max(1.0, P);
            const SlotState s{e[n], std::max(g.schedule.q_traj[n], 0.0)};
            const ConstraintCaps caps = merged_caps(s, n + 1, cfg);
            const bool violates = bumped * cfg.tau > s.E ||
                                  bumped > caps.isr || bumped > caps.rate;
            CHECK(violates);
        }
    }
}

TEST_CASE("relaxed greedy drops only the isr cap", "[greedy]") {
    SECTION("identical schedules when the isr cap never binds") {
        ScenarioConfig cfg = isr_config();
        cfg.g11 = {1e6, 1e6, 1e6};  // isr caps far above everything else
        const GreedyResult strict = greedy_allocate(cfg);
        const GreedyResult relaxed = greedy_allocate_relaxed(cfg);
        for (std::size_t n = 0; n < cfg.N; ++n)
            CHECK(strict.schedule.P[n] == relaxed.schedule.P[n]);
    }
    SECTION("rho -> 0 separates the variants") {
        ScenarioConfig cfg = isr_config();
        cfg.rho = 0.0;
        const GreedyResult strict = greedy_allocate(cfg);
        const GreedyResult relaxed = greedy_allocate_relaxed(cfg);
        for (std::size_t n = 0; n < cfg.N; ++n) CHECK(strict.schedule.P[n] == 0.0);
        CHECK(relaxed.schedule.P[0] > 0.0);
    }
}

TEST_CASE("energy surplus certificate", "[greedy]") {
    SECTION("huge arrivals certify greedy in every slot") {
        ScenarioConfig cfg = isr_config();
        cfg.Ea0 = 1e9;
        cfg.Ea = {1e9, 1e9, 1e9};
        const GreedyResult g = greedy_allocate(cfg);
        const SlotScan scan = energy_never_binding(cfg, g);
        CHECK(scan.all);
        for (bool b : scan.per_slot) CHECK(b);
    }
    SECTION("energy-starved instances fail the scan in every slot") {
        ScenarioConfig cfg = isr_config();
        cfg.Ea0 = 1e-3;
        cfg.Ea = {1e-3, 1e-3, 1e-3};
        cfg.Q0 = 5.0;
        const GreedyResult g = greedy_allocate(cfg);
        const SlotScan scan = energy_never_binding(cfg, g);
        CHECK_FALSE(scan.all);
        for (bool b : scan.per_slot) CHECK_FALSE(b);
    }
}

TEST_CASE("stepping the dynamics by hand reproduces the greedy trajectory",
          "[greedy]") {
    const ScenarioConfig cfg = fig3_config(0.5);
    const GreedyResult g = greedy_allocate(cfg);
    SlotState s{cfg.Ea0, cfg.Q0};
    for (std::size_t n = 1; n <= cfg.N; ++n) {
        CHECK(s.Q == Approx(g.schedule.q_traj[n - 1]).margin(1e-12));
        s = step(s, n, g.schedule.P[n - 1], cfg.Ea[n - 1], cfg.Da[n - 1], cfg);
    }
    CHECK(s.Q == Approx(g.schedule.q_traj[cfg.N]).margin(1e-12));
}

TEST_CASE("fig4 greedy fails the surplus scan in every slot", "[greedy]") {
    const ScenarioConfig cfg = fig4_config(9.0);
    const SlotScan scan = energy_never_binding(cfg, greedy_allocate(cfg));
    CHECK_FALSE(scan.all);
    for (bool b : scan.per_slot) CHECK_FALSE(b);
}

TEST_CASE("greedy upper-bounds the oracle optimum", "[greedy][oracle]") {
    std::mt19937 rng(31);
    const GridSpec grid{1e-2, 3};
    for (int t = 0; t < 40; ++t) {
        const ScenarioConfig cfg = random_instance(rng);
        const GreedyResult g = greedy_allocate(cfg);
        const OracleResult oracle = grid_optimal_full(cfg, grid);
        CHECK(g.schedule.objective >= oracle.objective - 1e-9);
    }
}

TEST_CASE("certified instances match the oracle optimum", "[greedy][oracle]") {
    std::mt19937 rng(41);
    const GridSpec grid{1e-2, 3};
    int certified = 0;
    for (int t = 0; t < 40; ++t) {
        ScenarioConfig cfg = random_instance(rng);
        cfg.Ea0 *= 1e4;
        for (double& e : cfg.Ea) e *= 1e4;
        const GreedyResult g = greedy_allocate(cfg);
        if (!energy_never_binding(cfg, g).all) continue;
        ++certified;
        const OracleResult oracle = grid_optimal_full(cfg, grid);
        CHECK(g.schedule.objective <= oracle.objective + grid.resolution);
        CHECK(g.schedule.objective >= oracle.objective - 1e-9);
    }
    CHECK(certified > 20);
}
