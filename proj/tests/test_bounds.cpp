#include <catch2/catch.hpp>

#include <random>

#include "crsched/bounds.hpp"
#include "crsched/experiments.hpp"
#include "crsched/oracle.hpp"

using namespace crsched;

namespace {

ScenarioConfig base_instance() {
    ScenarioConfig cfg;
    cfg.N = 3;
    cfg.Ea0 = 0.5;
    cfg.Ea = {0.4, 0.3, 0.2};
    cfg.Da = {0.3, 0.2, 0.4};
    cfg.Q0 = 0.5;
    cfg.alpha_direct = {0.8, 1.5, 1.1};
    cfg.rho = 0.1;
    cfg.P0 = 1.0;
    cfg.g11 = {6.0, 9.0, 7.0};
    cfg.g21 = {1.0, 1.0, 1.0};
    cfg.validate();
    return cfg;
}

}  // namespace

TEST_CASE("bound report certificates", "[bounds]") {
    SECTION("abundant energy certifies the upper bound") {
        ScenarioConfig cfg = base_instance();
        cfg.Ea0 = 1e9;
        cfg.Ea = {1e9, 1e9, 1e9};
        const BoundReport rep = assemble_bounds(cfg);
        CHECK(rep.greedy_exact);
        CHECK_FALSE(rep.realloc_exact);
        CHECK(rep.gap >= -1e-9);
    }
    SECTION("fig4-style energy starvation certifies the lower bound") {
        const BoundReport rep = assemble_bounds(fig4_config(9.0));
        CHECK(rep.realloc_exact);
        CHECK_FALSE(rep.greedy_exact);
        CHECK(rep.gap >= -1e-9);
    }
    SECTION("certificates never claim both sides at once") {
        std::mt19937 rng(131);
        std::uniform_real_distribution<double> e_d(0.05, 2.0), q_d(0.05, 1.5),
            a_d(0.3, 2.5);
        for (int t = 0; t < 200; ++t) {
            ScenarioConfig cfg = base_instance();
            cfg.Ea0 = e_d(rng);
            for (std::size_t n = 0; n < cfg.N; ++n) {
                cfg.Ea[n] = e_d(rng);
                cfg.Da[n] = q_d(rng);
                cfg.alpha_direct[n] = a_d(rng);
            }
            cfg.Q0 = q_d(rng);
            const BoundReport rep = assemble_bounds(cfg);
            CHECK(rep.gap >= -1e-9);
            CHECK_FALSE((rep.greedy_exact && rep.realloc_exact));
        }
    }
}

TEST_CASE("the oracle optimum lies inside the bracket", "[bounds][oracle]") {
    std::mt19937 rng(141);
    std::uniform_real_distribution<double> e_d(0.05, 0.4), q_d(0.05, 0.8),
        a_d(0.4, 2.0);
    const GridSpec grid{1e-2, 3};
    for (int t = 0; t < 30; ++t) {
        ScenarioConfig cfg = base_instance();
        cfg.Ea0 = e_d(rng);
        for (std::size_t n = 0; n < cfg.N; ++n) {
            cfg.Ea[n] = e_d(rng);
            cfg.Da[n] = q_d(rng);
            cfg.alpha_direct[n] = a_d(rng);
        }
        cfg.Q0 = q_d(rng);
        const BoundReport rep = assemble_bounds(cfg);
        const OracleResult oracle = grid_optimal_full(cfg, grid);
        CHECK(oracle.objective >= rep.lower - grid.resolution);
        CHECK(oracle.objective <= rep.upper + grid.resolution);
    }
}

TEST_CASE("relaxed-problem classification", "[bounds]") {
    SECTION("energy always binding selects the re-allocation branch") {
        ScenarioConfig cfg = base_instance();
        cfg.Ea0 = 0.05;
        cfg.Ea = {0.0, 0.0, 0.0};
        cfg.Q0 = 50.0;
        CHECK(classify_relaxed_optimum(cfg) == RelaxedOptimum::ReallocOptimal);
    }
    SECTION("rate always binding selects the greedy branch") {
        ScenarioConfig cfg = base_instance();
        cfg.Ea0 = 1e9;
        cfg.Ea = {1e9, 1e9, 1e9};
        cfg.Q0 = 0.1;
        cfg.Da = {0.05, 0.05, 0.05};
        CHECK(classify_relaxed_optimum(cfg) == RelaxedOptimum::GreedyOptimal);
    }
    SECTION("mixed instances report neither branch") {
        // slot 1 drains the small battery (energy binds), slot 2 then sees a
        // huge battery against a small queue (rate binds)
        ScenarioConfig cfg = base_instance();
        cfg.N = 2;
        cfg.Ea0 = 0.05;
        cfg.Ea = {1e6, 0.0};
        cfg.Da = {0.1, 0.0};
        cfg.Q0 = 5.0;
        cfg.alpha_direct = {1.0, 1.0};
        cfg.g11 = {6.0, 9.0};
        cfg.g21 = {1.0, 1.0};
        cfg.validate();
        CHECK(classify_relaxed_optimum(cfg) == RelaxedOptimum::Indeterminate);
        const BoundReport rep = assemble_bounds(cfg);
        CHECK(rep.upper >= rep.lower - 1e-9);
    }
    SECTION("classification is reproducible from the report") {
        const ScenarioConfig cfg = base_instance();
        const BoundReport rep = assemble_bounds(cfg);
        CHECK(classify_relaxed_optimum(cfg) == rep.relaxed_case);
    }
}
