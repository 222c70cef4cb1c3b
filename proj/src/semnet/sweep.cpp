#include "semnet/harness/sweep.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
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

SweepCell evaluate_point(const ScenarioConfig& cfg, double a, double b,
                         const SweepOptions& opts) {
    std::vector<double> sdsr(opts.seeds.size());
    parallel_for(opts.seeds.size(), opts.jobs, [&](std::size_t i) {
        ScenarioConfig run_cfg = cfg;
        run_cfg.seed = opts.seeds[i];
        const auto out = run_scenario_raw(run_cfg, Scheme::proposed);
        sdsr[i] = compute_metrics(out, run_cfg).sdsr;
    });
    SweepCell cell;
    cell.a = a;
    cell.b = b;
    cell.mean_sdsr = mean_of(sdsr);
    cell.ci95 = ci95_halfwidth(sdsr);
    return cell;
}

}  // namespace

void apply_kappa_scalar(ScenarioConfig& cfg, double kappa) {
    cfg.routing.kappa = {clamp01(kappa - 0.2), clamp01(kappa), clamp01(kappa + 0.2)};
}

std::vector<SweepCell> sweep_kappa_delta(const ScenarioConfig& base,
                                         const std::vector<double>& kappas,
                                         const std::vector<double>& delta0s,
                                         const SweepOptions& opts) {
    std::vector<SweepCell> cells;
    for (double k : kappas) {
        for (double d0 : delta0s) {
            ScenarioConfig cfg = base;
            apply_kappa_scalar(cfg, k);
            cfg.control.delta0 = d0;
            if (cfg.control.delta_min >= d0) cfg.control.delta_min = d0 / 5.0;
            cells.push_back(evaluate_point(cfg, k, d0, opts));
        }
    }
    return cells;
}

std::vector<std::pair<double, double>> simplex_grid(double step) {
    if (step <= 0.0 || step > 1.0) throw ConfigError("simplex step must be in (0,1]");
    std::vector<std::pair<double, double>> points;
    const int n = static_cast<int>(std::lround(1.0 / step));
    for (int ia = 0; ia <= n; ++ia) {
        for (int ib = 0; ib <= n; ++ib) {
            const double alpha = ia * step;
            const double beta = ib * step;
            if (alpha + beta > 1.0 + 1e-9) {
                std::cerr << "sweep: skipping invalid simplex point alpha=" << alpha
                          << " beta=" << beta << " (alpha+beta > 1)\n";
                continue;
            }
            points.emplace_back(alpha, beta);
        }
    }
    return points;
}

std::vector<SweepCell> sweep_simplex(const ScenarioConfig& base, double step,
                                     const SweepOptions& opts) {
    std::vector<SweepCell> cells;
    for (const auto& [alpha, beta] : simplex_grid(step)) {
        ScenarioConfig cfg = base;
        cfg.fusion.alpha = alpha;
        cfg.fusion.beta = beta;
        cfg.fusion.gamma = std::max(0.0, 1.0 - alpha - beta);
        cells.push_back(evaluate_point(cfg, alpha, beta, opts));
    }
    return cells;
}

std::vector<SweepCell> sweep_kappa_gamma(const ScenarioConfig& base,
                                         const std::vector<double>& kappas,
                                         const std::vector<double>& gammas,
                                         const SweepOptions& opts) {
    std::vector<SweepCell> cells;
    const double ab_ratio = base.fusion.alpha / (base.fusion.alpha + base.fusion.beta);
    for (double k : kappas) {
        for (double g : gammas) {
            if (g < 0.0 || g > 1.0) {
                std::cerr << "sweep: skipping invalid gamma=" << g << "\n";
                continue;
            }
            ScenarioConfig cfg = base;
            apply_kappa_scalar(cfg, k);
            cfg.fusion.gamma = g;
            cfg.fusion.alpha = (1.0 - g) * ab_ratio;
            cfg.fusion.beta = (1.0 - g) * (1.0 - ab_ratio);
            cells.push_back(evaluate_point(cfg, k, g, opts));
        }
    }
    return cells;
}

void write_sweep_csv(const std::string& panel, const std::string& axis_a,
                     const std::string& axis_b, const std::vector<SweepCell>& cells,
                     std::size_t n_seeds, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot open sweep CSV: " + path);
    f << "panel,param1,value1,param2,value2,mean_sdsr,ci95_halfwidth,n_seeds\n";
    for (const auto& c : cells)
        f << panel << ',' << axis_a << ',' << csv_num(c.a) << ',' << axis_b << ','
          << csv_num(c.b) << ',' << csv_num(c.mean_sdsr) << ',' << csv_num(c.ci95) << ','
          << n_seeds << '\n';
}

}  // namespace semnet
