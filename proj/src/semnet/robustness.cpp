#include "semnet/harness/robustness.hpp"

#include <atomic>
#include <fstream>
#include <functional>
#include <thread>

#include "semnet/harness/csv.hpp"
#include "semnet/harness/stats.hpp"

namespace semnet {

namespace {

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            fn(i);
        }
    };
    const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (n_threads == 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

struct PointStats {
    std::vector<double> distortion;
    std::vector<double> sdsr;
    // Per-seed interval trace (time, mean R), same tick grid across seeds.
    std::vector<std::vector<double>> r_traces;
    std::vector<double> times;
};

PointStats evaluate(const ScenarioConfig& cfg, Scheme scheme,
                    const std::vector<std::uint64_t>& seeds, int jobs, bool want_trace) {
    PointStats ps;
    ps.distortion.resize(seeds.size());
    ps.sdsr.resize(seeds.size());
    ps.r_traces.resize(seeds.size());
    std::vector<std::vector<double>> times(seeds.size());
    parallel_for(seeds.size(), jobs, [&](std::size_t i) {
        ScenarioConfig run_cfg = cfg;
        run_cfg.seed = seeds[i];
        const auto out = run_scenario_raw(run_cfg, scheme);
        const auto metrics = compute_metrics(out, run_cfg);
        ps.distortion[i] = metrics.mean_distortion;
        ps.sdsr[i] = metrics.sdsr;
        if (want_trace) {
            for (const auto& iv : out.intervals) {
                if (iv.decisions == 0) continue;
                ps.r_traces[i].push_back(iv.mean_r());
                times[i].push_back(iv.time);
            }
        }
    });
    if (want_trace && !times.empty()) ps.times = times[0];
    return ps;
}

}  // namespace

RobustnessResult run_robustness(const ScenarioConfig& base, const RobustnessOptions& opts) {
    RobustnessResult result;

    auto record = [&](const std::string& experiment, double level, Scheme scheme,
                      const PointStats& ps) {
        RobustnessRow row;
        row.experiment = experiment;
        row.level = level;
        row.scheme = scheme;
        row.mean_distortion = mean_of(ps.distortion);
        row.ci_distortion = ci95_halfwidth(ps.distortion);
        row.mean_sdsr = mean_of(ps.sdsr);
        row.ci_sdsr = ci95_halfwidth(ps.sdsr);
        result.rows.push_back(row);
    };

    for (double sigma : opts.noise_levels) {
        ScenarioConfig cfg = base;
        cfg.noise_sigma = sigma;
        for (Scheme scheme : opts.schemes)
            record("noise", sigma, scheme, evaluate(cfg, scheme, opts.seeds, opts.jobs, false));
    }

    for (int dim : opts.dims) {
        ScenarioConfig cfg = base;
        cfg.reduce_dim = dim;
        const double level = dim == 0 ? cfg.generator.dim : dim;
        for (Scheme scheme : opts.schemes)
            record("dimension", level, scheme, evaluate(cfg, scheme, opts.seeds, opts.jobs, false));
    }

    for (double fraction : opts.drift_fractions) {
        ScenarioConfig cfg = base;
        cfg.drift_fraction = fraction;
        for (Scheme scheme : opts.schemes) {
            const auto ps = evaluate(cfg, scheme, opts.seeds, opts.jobs, true);
            record("drift", fraction, scheme, ps);
            DriftTrace trace;
            trace.fraction = fraction;
            trace.scheme = scheme;
            trace.time = ps.times;
            // Mean across seeds at each interval index present in every seed.
            std::size_t min_len = trace.time.size();
            for (const auto& tr : ps.r_traces) min_len = std::min(min_len, tr.size());
            trace.time.resize(min_len);
            trace.mean_r.resize(min_len, 0.0);
            for (const auto& tr : ps.r_traces)
                for (std::size_t i = 0; i < min_len; ++i) trace.mean_r[i] += tr[i];
            for (auto& v : trace.mean_r) v /= static_cast<double>(ps.r_traces.size());
            result.traces.push_back(std::move(trace));
        }
    }
    return result;
}

void write_robustness_csv(const RobustnessResult& result, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot open robustness CSV: " + path);
    f << "experiment,level,scheme,mean_distortion,ci_distortion,mean_sdsr,ci_sdsr\n";
    for (const auto& r : result.rows)
        f << r.experiment << ',' << csv_num(r.level) << ',' << scheme_name(r.scheme) << ','
          << csv_num(r.mean_distortion) << ',' << csv_num(r.ci_distortion) << ','
          << csv_num(r.mean_sdsr) << ',' << csv_num(r.ci_sdsr) << '\n';
}

void write_drift_traces_csv(const RobustnessResult& result, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot open drift trace CSV: " + path);
    f << "fraction,scheme,time,mean_r\n";
    for (const auto& t : result.traces)
        for (std::size_t i = 0; i < t.time.size(); ++i)
            f << csv_num(t.fraction) << ',' << scheme_name(t.scheme) << ',' << csv_num(t.time[i])
              << ',' << csv_num(t.mean_r[i]) << '\n';
}

}  // namespace semnet
