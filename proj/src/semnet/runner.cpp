#include "semnet/harness/runner.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "semnet/harness/csv.hpp"
#include "semnet/harness/stats.hpp"

namespace semnet {

namespace fs = std::filesystem;

SimOutput run_scenario_raw(const ScenarioConfig& cfg, Scheme scheme) {
    Simulation sim(cfg, scheme);
    return sim.run();
}

RunResult run_scenario(const ScenarioConfig& cfg, Scheme scheme, const RunOptions& opts) {
    Simulation sim(cfg, scheme);
    std::string run_dir;
    if (!opts.out_dir.empty()) {
        run_dir = opts.out_dir + "/" + cfg.name + "_" + scheme_name(scheme) + "_s" +
                  std::to_string(cfg.seed);
        fs::create_directories(run_dir);
        if (opts.write_events) sim.enable_event_log(run_dir + "/events.csv");
    }
    SimOutput out;
    try {
        out = sim.run();
    } catch (const std::exception& e) {
        throw SimulationError(std::string(e.what()) + " [scenario " + cfg.name + ", scheme " +
                              scheme_name(scheme) + ", seed " + std::to_string(cfg.seed) + "]");
    }

    RunResult res;
    res.scheme = scheme;
    res.seed = cfg.seed;
    res.metrics = compute_metrics(out, cfg);
    res.topology_digest = out.topology_digest;
    res.arrival_digest = out.arrival_digest;

    if (!run_dir.empty() && opts.write_logs) {
        write_decision_log(out, run_dir + "/decisions.csv");
        write_distortion_log(out, run_dir + "/distortion.csv");
        write_message_log(out, run_dir + "/messages.csv");
        write_run_metrics(res.metrics, scheme, cfg.seed, run_dir + "/metrics.csv");
    }
    return res;
}

std::vector<double> BatchResult::metric_values(Scheme scheme, const std::string& metric) const {
    std::vector<double> values;
    for (const auto& r : runs) {
        if (r.scheme != scheme) continue;
        for (const auto& [name, value] : metric_rows(r.metrics))
            if (name == metric) values.push_back(value);
    }
    return values;
}

double BatchResult::aggregate_mean(Scheme scheme, const std::string& metric) const {
    return mean_of(metric_values(scheme, metric));
}

double BatchResult::aggregate_ci95(Scheme scheme, const std::string& metric) const {
    return ci95_halfwidth(metric_values(scheme, metric));
}

BatchResult run_batch(const ScenarioConfig& cfg, const std::vector<Scheme>& schemes,
                      const std::vector<std::uint64_t>& seeds, const RunOptions& opts, int jobs) {
    if (schemes.empty() || seeds.empty()) throw ConfigError("batch needs schemes and seeds");
    BatchResult batch;
    batch.schemes = schemes;
    batch.seeds = seeds;
    batch.runs.resize(schemes.size() * seeds.size());

    // (scheme, seed) pairs in a fixed order; workers fill preallocated slots
    // so the output is identical regardless of scheduling.
    std::vector<std::pair<std::size_t, std::size_t>> work;
    for (std::size_t si = 0; si < schemes.size(); ++si)
        for (std::size_t di = 0; di < seeds.size(); ++di) work.emplace_back(si, di);

    std::atomic<std::size_t> next{0};
    std::vector<std::string> errors(work.size());
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= work.size()) return;
            const auto [si, di] = work[i];
            ScenarioConfig run_cfg = cfg;
            run_cfg.seed = seeds[di];
            try {
                batch.runs[si * seeds.size() + di] = run_scenario(run_cfg, schemes[si], opts);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };
    const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(work.size())));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& err : errors)
        if (!err.empty()) throw SimulationError(err);

    // Scheme fairness: identical topology and arrival digests per seed.
    for (std::size_t di = 0; di < seeds.size(); ++di) {
        const auto& first = batch.runs[di];
        for (std::size_t si = 1; si < schemes.size(); ++si) {
            const auto& r = batch.runs[si * seeds.size() + di];
            if (r.topology_digest != first.topology_digest ||
                r.arrival_digest != first.arrival_digest)
                throw SimulationError("scheme fairness violated: digests differ across schemes");
        }
    }

    if (!opts.out_dir.empty()) {
        fs::create_directories(opts.out_dir);
        write_batch_csv(batch, opts.out_dir + "/batch_metrics.csv");
    }
    return batch;
}

void write_batch_csv(const BatchResult& batch, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot open batch CSV: " + path);
    f << "scheme,seed,metric,value\n";
    for (const auto& r : batch.runs)
        for (const auto& [name, value] : metric_rows(r.metrics))
            f << scheme_name(r.scheme) << ',' << r.seed << ',' << name << ',' << csv_num(value)
              << '\n';

    // Aggregates: mean and ci95 rows per scheme per metric (exact arithmetic
    // mean of the per-seed values).
    const auto metric_names = metric_rows(RunMetrics{});
    for (const auto scheme : batch.schemes) {
        for (const auto& [name, unused] : metric_names) {
            const auto values = batch.metric_values(scheme, name);
            f << scheme_name(scheme) << ",mean," << name << ',' << csv_num(mean_of(values))
              << '\n';
            f << scheme_name(scheme) << ",ci95," << name << ',' << csv_num(ci95_halfwidth(values))
              << '\n';
        }
    }

    // SP-normalized throughput per scheme when SP is present.
    bool has_sp = false;
    for (auto s : batch.schemes) has_sp |= s == Scheme::sp;
    if (has_sp) {
        const double sp_mean = batch.aggregate_mean(Scheme::sp, "throughput_Bps");
        if (sp_mean > 0.0)
            for (const auto scheme : batch.schemes)
                f << scheme_name(scheme) << ",mean,normalized_throughput,"
                  << csv_num(batch.aggregate_mean(scheme, "throughput_Bps") / sp_mean) << '\n';
    }
}

namespace {

struct CsvRow {
    std::string scheme;
    std::string seed;
    std::string metric;
    double value = 0.0;
};

std::vector<CsvRow> read_batch_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open batch CSV: " + path);
    std::vector<CsvRow> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (header) {
            header = false;
            continue;
        }
        std::istringstream ss(line);
        CsvRow row;
        std::string value;
        if (!std::getline(ss, row.scheme, ',')) continue;
        if (!std::getline(ss, row.seed, ',')) continue;
        if (!std::getline(ss, row.metric, ',')) continue;
        if (!std::getline(ss, value, ',')) continue;
        row.value = std::stod(value);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

void write_report(const std::string& batch_csv, const std::string& out_path) {
    const auto rows = read_batch_csv(batch_csv);
    std::map<std::pair<std::string, std::string>, double> means;
    for (const auto& r : rows)
        if (r.seed == "mean") means[{r.scheme, r.metric}] = r.value;

    auto get = [&](const std::string& scheme, const std::string& metric,
                   double fallback = 0.0) {
        auto it = means.find({scheme, metric});
        return it == means.end() ? fallback : it->second;
    };
    if (!means.count({"proposed", "sdsr"}) || !means.count({"sp", "sdsr"}))
        throw MeasurementError("report needs aggregate rows for proposed and sp");

    std::ofstream f(out_path);
    if (!f) throw ConfigError("cannot open report: " + out_path);
    f << "metric,sp,lbr,dmr,proposed,change_vs_sp\n";
    auto emit = [&](const std::string& metric, bool percent_change) {
        f << metric;
        for (const std::string scheme : {"sp", "lbr", "dmr", "proposed"}) {
            if (means.count({scheme, metric}))
                f << ',' << csv_num(get(scheme, metric));
            else
                f << ',';
        }
        const double sp = get("sp", metric);
        const double prop = get("proposed", metric);
        if (percent_change && sp != 0.0)
            f << ',' << csv_num((prop - sp) / sp);
        else
            f << ',' << csv_num(prop - sp);
        f << '\n';
    };
    emit("sdsr", false);
    emit("mean_distortion", true);
    emit("reroute_per_flow_min", true);
    emit("highr_delay_relvar", true);
    emit("mean_delay_s", true);
    emit("goodput_Bps", true);
    emit("throughput_Bps", true);
    f << "normalized_throughput";
    const double sp_thr = get("sp", "throughput_Bps", 1.0);
    for (const std::string scheme : {"sp", "lbr", "dmr", "proposed"}) {
        if (means.count({scheme, "throughput_Bps"}) && sp_thr > 0.0)
            f << ',' << csv_num(get(scheme, "throughput_Bps") / sp_thr);
        else
            f << ',';
    }
    f << ',' << csv_num(sp_thr > 0.0 ? get("proposed", "throughput_Bps") / sp_thr - 1.0 : 0.0)
      << '\n';
}

}  // namespace semnet
