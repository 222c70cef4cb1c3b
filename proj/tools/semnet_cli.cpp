// Command-line experiment driver.
//
//   semnet run        one scenario (scheme + seed)
//   semnet batch      schemes x seeds with aggregates
//   semnet sweep      sensitivity grids (panels a/b/c)
//   semnet robustness noise / dimension / drift studies
//   semnet report     gain-table summary from a batch CSV
//
// Exit codes: 0 ok, 2 configuration error, 3 simulation error,
// 4 measurement error, 1 anything else.

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "semnet/harness/robustness.hpp"
#include "semnet/harness/runner.hpp"
#include "semnet/harness/sweep.hpp"
#include "semnet/io.hpp"

using namespace semnet;

namespace {

ScenarioConfig load_config_or_default(const std::string& path) {
    if (path.empty()) return ScenarioConfig{};
    return load_scenario(path);
}

std::vector<Scheme> parse_schemes(const std::vector<std::string>& names) {
    std::vector<Scheme> out;
    for (const auto& n : names) out.push_back(scheme_from_name(n));
    return out;
}

void apply_phase_overrides(ScenarioConfig& cfg, const std::vector<double>& load,
                           const std::vector<double>& mobility) {
    if (!load.empty()) {
        if (load.size() != 3) throw ConfigError("--phase-load needs exactly three values");
        cfg.p1.load_mult = load[0];
        cfg.p2.load_mult = load[1];
        cfg.p3.load_mult = load[2];
    }
    if (!mobility.empty()) {
        if (mobility.size() != 3) throw ConfigError("--phase-mobility needs exactly three values");
        cfg.p1.mobility_mult = mobility[0];
        cfg.p2.mobility_mult = mobility[1];
        cfg.p3.mobility_mult = mobility[2];
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semantic-aware network management simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> scheme_names;
    std::vector<double> phase_load, phase_mobility;
    int jobs = 1;
    bool events = false;

    app.add_option("--config", config_path, "scenario config file (key = value)");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seeds", seeds, "seed list");
    app.add_option("--schemes", scheme_names, "scheme list: sp lbr dmr proposed naive");
    app.add_option("--phase-load", phase_load, "three per-phase load multipliers");
    app.add_option("--phase-mobility", phase_mobility, "three per-phase mobility multipliers");
    app.add_option("--jobs", jobs, "parallel runs");
    app.add_flag("--events", events, "write the verbose per-event log");

    auto* cmd_run = app.add_subcommand("run", "single scenario run");
    auto* cmd_batch = app.add_subcommand("batch", "schemes x seeds batch");
    auto* cmd_sweep = app.add_subcommand("sweep", "parameter sensitivity sweep");
    auto* cmd_robust = app.add_subcommand("robustness", "noise/dimension/drift studies");
    auto* cmd_report = app.add_subcommand("report", "summarize a batch CSV");

    std::string panel = "a";
    double simplex_step = 0.1;
    std::vector<double> kappas{0.3, 0.6, 0.9};
    std::vector<double> delta0s{0.03, 0.05, 0.08};
    std::vector<double> gammas{0.1, 0.25, 0.5};
    cmd_sweep->add_option("--panel", panel, "a: kappa x delta0, b: (alpha,beta) simplex, c: kappa x gamma");
    cmd_sweep->add_option("--step", simplex_step, "simplex grid step (panel b)");
    cmd_sweep->add_option("--kappas", kappas, "kappa grid (panels a, c)");
    cmd_sweep->add_option("--delta0s", delta0s, "delta0 grid (panel a)");
    cmd_sweep->add_option("--gammas", gammas, "gamma grid (panel c)");

    std::string batch_csv;
    cmd_report->add_option("--batch-csv", batch_csv, "batch_metrics.csv to summarize");

    bool export_fixtures = false;
    cmd_run->add_flag("--export-fixtures", export_fixtures,
                      "write the generated knowledge graph, task sets, and topology");

    CLI11_PARSE(app, argc, argv);

    try {
        ScenarioConfig cfg = load_config_or_default(config_path);
        apply_phase_overrides(cfg, phase_load, phase_mobility);
        if (seeds.empty()) seeds = {1};

        if (*cmd_run) {
            cfg.seed = seeds[0];
            const Scheme scheme =
                scheme_names.empty() ? Scheme::proposed : scheme_from_name(scheme_names[0]);
            RunOptions opts;
            opts.out_dir = out_dir;
            opts.write_events = events;
            if (export_fixtures) {
                // Reproduce the run's generated inputs and write them in the
                // shared text format.
                std::filesystem::create_directories(out_dir);
                StreamSet streams(cfg.seed);
                const auto topo = generate_topology(cfg, streams.topology);
                save_topology(topo, out_dir + "/topology.txt");
                SyntheticSemantics sem(cfg.generator, streams.semantics);
                save_knowledge_graph(sem.graph(), out_dir + "/knowledge_graph.txt");
                save_task_sets(sem.task_sets(), out_dir + "/task_sets.txt");
            }
            const auto res = run_scenario(cfg, scheme, opts);
            std::cout << "run complete: scheme=" << scheme_name(scheme) << " seed=" << cfg.seed
                      << " sdsr=" << res.metrics.sdsr
                      << " mean_distortion=" << res.metrics.mean_distortion
                      << " mean_delay_s=" << res.metrics.mean_delay_s << "\n";
        } else if (*cmd_batch) {
            const auto schemes = scheme_names.empty()
                                     ? std::vector<Scheme>{Scheme::sp, Scheme::lbr, Scheme::dmr,
                                                           Scheme::proposed}
                                     : parse_schemes(scheme_names);
            RunOptions opts;
            opts.out_dir = out_dir;
            opts.write_events = events;
            const auto batch = run_batch(cfg, schemes, seeds, opts, jobs);
            std::cout << "batch complete: " << batch.runs.size() << " runs -> " << out_dir
                      << "/batch_metrics.csv\n";
        } else if (*cmd_sweep) {
            std::filesystem::create_directories(out_dir);
            SweepOptions opts;
            opts.seeds = seeds.size() > 1 ? seeds : std::vector<std::uint64_t>{1, 2, 3};
            opts.jobs = jobs;
            if (panel == "a") {
                const auto cells = sweep_kappa_delta(cfg, kappas, delta0s, opts);
                write_sweep_csv("a", "kappa", "delta0", cells, opts.seeds.size(),
                                out_dir + "/sweep_kappa_delta0.csv");
            } else if (panel == "b") {
                const auto cells = sweep_simplex(cfg, simplex_step, opts);
                write_sweep_csv("b", "alpha", "beta", cells, opts.seeds.size(),
                                out_dir + "/sweep_alpha_beta.csv");
            } else if (panel == "c") {
                const auto cells = sweep_kappa_gamma(cfg, kappas, gammas, opts);
                write_sweep_csv("c", "kappa", "gamma", cells, opts.seeds.size(),
                                out_dir + "/sweep_kappa_gamma.csv");
            } else {
                throw ConfigError("unknown sweep panel: " + panel);
            }
            std::cout << "sweep complete -> " << out_dir << "\n";
        } else if (*cmd_robust) {
            std::filesystem::create_directories(out_dir);
            RobustnessOptions opts;
            if (seeds.size() > 1) opts.seeds = seeds;
            if (!scheme_names.empty()) opts.schemes = parse_schemes(scheme_names);
            opts.jobs = jobs;
            const auto result = run_robustness(cfg, opts);
            write_robustness_csv(result, out_dir + "/robustness.csv");
            write_drift_traces_csv(result, out_dir + "/drift_traces.csv");
            std::cout << "robustness complete -> " << out_dir << "\n";
        } else if (*cmd_report) {
            if (batch_csv.empty()) batch_csv = out_dir + "/batch_metrics.csv";
            std::filesystem::create_directories(out_dir);
            write_report(batch_csv, out_dir + "/report.csv");
            std::cout << "report -> " << out_dir << "/report.csv\n";
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const SimulationError& e) {
        std::cerr << "simulation error: " << e.what() << "\n";
        return 3;
    } catch (const MeasurementError& e) {
        std::cerr << "measurement error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
