// Command-line front end: parse a scenario file, dispatch algorithms or the
// canned sweeps, and emit CSV or JSON-lines rows.
//
// Exit codes: 0 success, 2 config/usage error, 3 infeasible request,
// 4 oracle refusal.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "crsched/bounds.hpp"
#include "crsched/config_io.hpp"
#include "crsched/emit.hpp"
#include "crsched/experiments.hpp"
#include "crsched/greedy.hpp"
#include "crsched/model.hpp"
#include "crsched/oracle.hpp"
#include "crsched/realloc.hpp"

namespace {

using namespace crsched;

struct Options {
    std::string config_path;
    std::string algo = "all";
    std::string format = "csv";
    std::string out_path;
    std::string points;  // comma-separated sweep values; empty string = none
    bool points_given = false;
    double oracle_resolution = 1e-2;
    double log_base_override = 0.0;
    int example_id = 0;
};

std::vector<double> parse_points(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            std::size_t used = 0;
            const double v = std::stod(tok, &used);
            if (tok.find_first_not_of(" \t", used) != std::string::npos)
                throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError(0, "bad sweep point '" + tok + "'");
        }
    }
    return out;
}

ScenarioConfig load_config(const Options& opt, RowWriter& w) {
    std::ifstream in(opt.config_path);
    if (!in) throw ConfigError(0, "cannot open config file " + opt.config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    ParsedConfig parsed = parse_config(buf.str());
    for (const auto& warn : parsed.warnings) w.warning(warn);
    if (opt.log_base_override > 0.0) {
        parsed.cfg.log_base = opt.log_base_override;
        parsed.cfg.validate();
    }
    return parsed.cfg;
}

void emit_schedule(RowWriter& w, const std::string& scenario,
                   const std::string& algo, const Schedule& s,
                   const ConstraintProfile* profile) {
    for (std::size_t n = 0; n < s.P.size(); ++n) {
        const char* cap = profile ? cap_name((*profile)[n].active) : "-";
        w.slot_row(scenario, algo, n + 1, s.P[n], s.R[n], s.q_traj[n + 1], cap);
    }
    w.summary_row(scenario, algo, s.objective);
}

void emit_bounds(RowWriter& w, const std::string& scenario,
                 const BoundReport& rep) {
    w.summary_row(scenario, "bounds:upper", rep.upper);
    w.summary_row(scenario, "bounds:lower", rep.lower);
    w.summary_row(scenario, "bounds:gap", rep.gap);
    std::string cert = "greedy_exact=";
    cert += rep.greedy_exact ? "yes" : "no";
    cert += ";realloc_exact=";
    cert += rep.realloc_exact ? "yes" : "no";
    cert += ";apriori_greedy=";
    cert += rep.greedy_exact_apriori ? "yes" : "no";
    cert += ";apriori_realloc=";
    cert += rep.realloc_exact_apriori ? "yes" : "no";
    cert += ";relaxed_case=";
    cert += relaxed_optimum_name(rep.relaxed_case);
    w.text_row(scenario, "bounds:certificates", cert);
}

int cmd_run(const Options& opt, RowWriter& w) {
    const ScenarioConfig cfg = load_config(opt, w);
    w.header();
    if (opt.algo == "greedy" && cfg.relaxed)
        throw InfeasibleError(
            "strict greedy needs ISR data (rho, P0, g11, g21) and relaxed = false");
    const bool want_greedy =
        opt.algo == "greedy" || (opt.algo == "all" && !cfg.relaxed);
    const bool want_relaxed = opt.algo == "greedy-relaxed" || opt.algo == "all";
    const bool want_pa = opt.algo == "pa" || opt.algo == "all";
    if (want_greedy) {
        const GreedyResult g = greedy_allocate(cfg);
        emit_schedule(w, "run", "greedy", g.schedule, &g.profile);
    }
    if (want_relaxed) {
        const GreedyResult g = greedy_allocate_relaxed(cfg);
        emit_schedule(w, "run", "greedy-relaxed", g.schedule, &g.profile);
    }
    if (want_pa) {
        const ReallocResult pa = reallocate_power(cfg);
        emit_schedule(w, "run", "pa", pa.schedule, nullptr);
        const ReallocObjectives obj = pa_objectives(cfg, pa.schedule);
        w.summary_row("run", "pa:clamped", obj.clamped);
    }
    if (opt.algo == "all") emit_bounds(w, "run", assemble_bounds(cfg));
    return 0;
}

int cmd_example(const Options& opt, RowWriter& w) {
    if (opt.example_id != 1 && opt.example_id != 2)
        throw ConfigError(0, "unknown example id (use 1 or 2)");
    w.header();
    const ScenarioConfig cfg = example_config(opt.example_id);
    const ReallocResult pa = reallocate_power(cfg);
    const std::string scenario = "example" + std::to_string(opt.example_id);
    for (std::size_t k = 0; k < pa.trace.stages.size(); ++k) {
        const auto& stage = pa.trace.stages[k];
        const std::string id = scenario + ":alloc" + std::to_string(k + 1);
        for (std::size_t n = 0; n < stage.size(); ++n) {
            const double R = rate(stage[n], cfg.alpha(n + 1), cfg.log_base);
            w.slot_row(id, "pa", n + 1, stage[n], R, 0.0, "-");
        }
    }
    emit_schedule(w, scenario, "pa", pa.schedule, nullptr);
    return 0;
}

int cmd_fig(const Options& opt, RowWriter& w, int fig) {
    SweepSpec spec;
    spec.parameter = fig == 3   ? SweepParameter::SlotThreeAlpha
                     : fig == 4 ? SweepParameter::MeanEnergyArrival
                                : SweepParameter::MeanDataArrival;
    if (opt.points_given)
        spec.values = parse_points(opt.points);
    else
        spec.values = fig == 3   ? fig3_default_points()
                      : fig == 4 ? fig4_default_points()
                                 : fig5_default_points();
    spec.want_greedy = opt.algo == "greedy" || opt.algo == "all";
    spec.want_greedy_relaxed = opt.algo == "greedy-relaxed";
    spec.want_realloc = opt.algo == "pa" || opt.algo == "all";

    w.header();
    for (const SweepRow& row : run_sweep(spec)) {
        char label[64];
        std::snprintf(label, sizeof label, "fig%d:%.6f", fig, row.parameter);
        if (spec.want_greedy)
            emit_schedule(w, label, "greedy", row.greedy.schedule,
                          &row.greedy.profile);
        if (row.greedy_relaxed)
            emit_schedule(w, label, "greedy-relaxed",
                          row.greedy_relaxed->schedule,
                          &row.greedy_relaxed->profile);
        if (spec.want_realloc)
            emit_schedule(w, label, "pa", row.realloc.schedule, nullptr);
    }
    return 0;
}

int cmd_oracle_check(const Options& opt, RowWriter& w) {
    const ScenarioConfig cfg = load_config(opt, w);
    w.header();
    GridSpec grid;
    grid.resolution = opt.oracle_resolution;
    grid.max_N = 4;
    const OracleResult full = grid_optimal_full(cfg, grid);
    const OracleResult relaxed = grid_optimal_relaxed(cfg, grid);
    const GreedyResult greedy = greedy_allocate(cfg);
    const ReallocResult pa = reallocate_power(cfg);
    emit_schedule(w, "oracle-check", "greedy", greedy.schedule, &greedy.profile);
    emit_schedule(w, "oracle-check", "pa", pa.schedule, nullptr);
    emit_schedule(w, "oracle-check", "oracle-full", full.schedule, nullptr);
    emit_schedule(w, "oracle-check", "oracle-relaxed", relaxed.schedule, nullptr);
    const double slack = grid.resolution;
    const bool ok = pa.schedule.objective <= full.objective + slack &&
                    full.objective <= greedy.schedule.objective + slack;
    w.text_row("oracle-check", "oracle:sandwich", ok ? "ok" : "violated");
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"slot-level transmit-power scheduling for an energy-harvesting "
                 "underlay secondary link"};
    app.require_subcommand(1);
    Options opt;

    auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--format", opt.format, "csv or jsonl")
            ->check(CLI::IsMember({"csv", "jsonl"}));
        cmd->add_option("--out", opt.out_path, "output path (default stdout)");
    };

    CLI::App* run = app.add_subcommand("run", "run algorithms on a scenario file");
    run->add_option("--config", opt.config_path, "scenario file")->required();
    run->add_option("--algo", opt.algo, "greedy, greedy-relaxed, pa, or all")
        ->check(CLI::IsMember({"greedy", "greedy-relaxed", "pa", "all"}));
    run->add_option("--log-base", opt.log_base_override, "override rate-law base");
    add_io(run);

    CLI::App* example = app.add_subcommand("example", "staged allocation examples");
    example->add_option("id", opt.example_id, "example id (1 or 2)")->required();
    add_io(example);

    CLI::App* fig3 = app.add_subcommand("fig3", "slot-3 channel sweep");
    CLI::App* fig4 = app.add_subcommand("fig4", "mean energy arrival sweep");
    CLI::App* fig5 = app.add_subcommand("fig5", "mean data arrival sweep");
    for (CLI::App* cmd : {fig3, fig4, fig5}) {
        cmd->add_option("--points", opt.points,
                        "comma-separated sweep values (empty for none)");
        cmd->add_option("--algo", opt.algo, "greedy, greedy-relaxed, pa, or all")
            ->check(CLI::IsMember({"greedy", "greedy-relaxed", "pa", "all"}));
        add_io(cmd);
    }

    CLI::App* oracle = app.add_subcommand("oracle-check",
                                          "brute-force bound verification");
    oracle->add_option("--config", opt.config_path, "scenario file")->required();
    oracle->add_option("--oracle-resolution", opt.oracle_resolution,
                       "grid step, power units");
    add_io(oracle);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }
    opt.points_given = fig3->count("--points") > 0 ||
                       fig4->count("--points") > 0 ||
                       fig5->count("--points") > 0;

    std::ofstream file_out;
    std::ostream* out = &std::cout;
    if (!opt.out_path.empty()) {
        file_out.open(opt.out_path, std::ios::binary);
        if (!file_out) {
            std::cerr << "cannot open output file " << opt.out_path << "\n";
            return 2;
        }
        out = &file_out;
    }
    crsched::RowWriter writer(*out, opt.format == "csv"
                                        ? crsched::OutFormat::Csv
                                        : crsched::OutFormat::Jsonl);

    try {
        if (run->parsed()) return cmd_run(opt, writer);
        if (example->parsed()) return cmd_example(opt, writer);
        if (fig3->parsed()) return cmd_fig(opt, writer, 3);
        if (fig4->parsed()) return cmd_fig(opt, writer, 4);
        if (fig5->parsed()) return cmd_fig(opt, writer, 5);
        if (oracle->parsed()) return cmd_oracle_check(opt, writer);
    } catch (const crsched::OracleRefusal& e) {
        std::cerr << "oracle refusal: " << e.what() << "\n";
        return 4;
    } catch (const crsched::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const crsched::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
