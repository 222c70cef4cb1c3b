// Experiment driver: single runs, seeded batches across schemes with
// fairness checks, aggregation with confidence intervals, and the summary
// report.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semnet/harness/metrics.hpp"

namespace semnet {

struct RunOptions {
    std::string out_dir;        // empty: no files written
    bool write_logs = true;     // decision/distortion/message logs
    bool write_events = false;  // verbose event log
};

struct RunResult {
    Scheme scheme = Scheme::proposed;
    std::uint64_t seed = 0;
    RunMetrics metrics;
    std::uint64_t topology_digest = 0;
    std::uint64_t arrival_digest = 0;
};

// One full simulation plus metric computation; logs land in
// <out_dir>/<name>_<scheme>_s<seed>/.
RunResult run_scenario(const ScenarioConfig& cfg, Scheme scheme, const RunOptions& opts);

// Full simulator output for callers needing the raw tables.
SimOutput run_scenario_raw(const ScenarioConfig& cfg, Scheme scheme);

struct BatchResult {
    std::vector<RunResult> runs;  // scheme-major, seed-minor order
    std::vector<Scheme> schemes;
    std::vector<std::uint64_t> seeds;

    std::vector<double> metric_values(Scheme scheme, const std::string& metric) const;
    double aggregate_mean(Scheme scheme, const std::string& metric) const;
    double aggregate_ci95(Scheme scheme, const std::string& metric) const;
};

// Runs schemes x seeds (optionally in parallel), verifies that every scheme
// consumed identical topologies and arrival sequences per seed, and writes
// batch_metrics.csv (per-run rows plus mean / ci95 aggregate rows and
// SP-normalized throughput).
BatchResult run_batch(const ScenarioConfig& cfg, const std::vector<Scheme>& schemes,
                      const std::vector<std::uint64_t>& seeds, const RunOptions& opts,
                      int jobs = 1);

void write_batch_csv(const BatchResult& batch, const std::string& path);

// Aggregates a batch CSV into a gain-table style summary (proposed vs SP).
void write_report(const std::string& batch_csv, const std::string& out_path);

}  // namespace semnet
