// Per-run metric computation over the simulator's output tables. Everything
// is measured strictly inside the post-warm-up evaluation window.
#pragma once

#include <optional>
#include <vector>

#include "semnet/netsim/simulator.hpp"

namespace semnet {

struct RunMetrics {
    double sdsr = 0.0;
    double mean_distortion = 0.0;
    double p95_distortion = 0.0;
    double mean_delay_s = 0.0;
    double p95_delay_s = 0.0;
    double reroute_per_flow_min = 0.0;
    double throughput_Bps = 0.0;  // delivered bytes (all traffic) per second
    double goodput_Bps = 0.0;     // SDSR-passing semantic + delivered background
    double stability_index = 0.0;
    double highr_delay_relvar = -1.0;  // -1 when too few high-class samples
    int stabilization_p2 = -1;
    int stabilization_p3 = -1;
    double correction_fraction = 0.0;

    std::int64_t generated_window = 0;
    std::int64_t delivered_window = 0;
    std::int64_t lost_loss = 0;
    std::int64_t lost_break = 0;
    std::int64_t dropped_no_route = 0;
    int constraint_violations = 0;
};

// SDSR numerator/denominator per the relevance-dependent tolerance; counts
// every generated message in the window, undelivered ones as failures.
double compute_sdsr(const std::vector<MessageOutcome>& messages, const ControlConfig& cfg,
                    double window_start, double window_end);

// Per-flow path changes per minute, averaged over flows that appear in the log.
double compute_path_stability(const std::vector<ControlDecision>& decisions, int flow_count,
                              double window_start, double window_end);

// (throughput, goodput) in bytes per second.
std::pair<double, double> compute_throughput_goodput(double delivered_sem_bytes,
                                                     double delivered_bg_bytes,
                                                     double sdsr_passing_sem_bytes,
                                                     double eval_seconds);

RunMetrics compute_metrics(const SimOutput& out, const ScenarioConfig& cfg);

}  // namespace semnet
