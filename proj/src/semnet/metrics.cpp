#include "semnet/harness/metrics.hpp"

#include <map>

#include "semnet/harness/stats.hpp"
#include "semnet/kplane/stabilization.hpp"

namespace semnet {

double compute_sdsr(const std::vector<MessageOutcome>& messages, const ControlConfig& cfg,
                    double window_start, double window_end) {
    std::int64_t generated = 0;
    std::int64_t passed = 0;
    for (const auto& m : messages) {
        if (m.created < window_start || m.created > window_end) continue;
        ++generated;
        if (m.terminal != Terminal::delivered) continue;
        if (m.d_obs <= tolerance(m.r, cfg)) ++passed;
    }
    if (generated == 0) throw MeasurementError("SDSR undefined: no messages generated in window");
    return static_cast<double>(passed) / static_cast<double>(generated);
}

double compute_path_stability(const std::vector<ControlDecision>& decisions, int flow_count,
                              double window_start, double window_end) {
    std::map<int, const std::vector<int>*> last_path;
    std::map<int, int> changes;
    for (const auto& d : decisions) {
        if (!d.routed || d.time < window_start || d.time > window_end) continue;
        auto it = last_path.find(d.flow);
        if (it != last_path.end() && *it->second != d.path) changes[d.flow] += 1;
        last_path[d.flow] = &d.path;
    }
    if (last_path.empty()) return 0.0;
    const double minutes = (window_end - window_start) / 60.0;
    double sum = 0.0;
    for (const auto& [flow, last] : last_path) {
        const auto it = changes.find(flow);
        sum += (it == changes.end() ? 0 : it->second) / minutes;
    }
    (void)flow_count;
    return sum / static_cast<double>(last_path.size());
}

std::pair<double, double> compute_throughput_goodput(double delivered_sem_bytes,
                                                     double delivered_bg_bytes,
                                                     double sdsr_passing_sem_bytes,
                                                     double eval_seconds) {
    if (eval_seconds <= 0.0) throw MeasurementError("evaluation window is empty");
    const double throughput = (delivered_sem_bytes + delivered_bg_bytes) / eval_seconds;
    const double goodput = (sdsr_passing_sem_bytes + delivered_bg_bytes) / eval_seconds;
    return {throughput, goodput};
}

RunMetrics compute_metrics(const SimOutput& out, const ScenarioConfig& cfg) {
    RunMetrics m;
    const double w0 = cfg.warmup_s;
    const double w1 = cfg.duration_s;

    m.sdsr = compute_sdsr(out.messages, cfg.control, w0, w1);

    std::vector<double> distortions;
    std::vector<double> delays;
    std::vector<double> highr_delays;
    double passing_bytes = 0.0;
    for (const auto& msg : out.messages) {
        if (msg.created < w0 || msg.created > w1) continue;
        ++m.generated_window;
        switch (msg.terminal) {
            case Terminal::lost_loss: ++m.lost_loss; break;
            case Terminal::lost_break: ++m.lost_break; break;
            case Terminal::dropped_no_route: ++m.dropped_no_route; break;
            default: break;
        }
        if (msg.terminal != Terminal::delivered) continue;
        ++m.delivered_window;
        distortions.push_back(msg.d_obs);
        delays.push_back(msg.delivered_time - msg.created);
        if (msg.cls == ImportanceClass::high) highr_delays.push_back(msg.delivered_time - msg.created);
        if (msg.d_obs <= tolerance(msg.r, cfg.control) && msg.delivered_time >= w0 &&
            msg.delivered_time <= w1)
            passing_bytes += msg.size_bytes;
    }
    if (!distortions.empty()) {
        m.mean_distortion = mean_of(distortions);
        m.p95_distortion = percentile(distortions, 0.95);
    }
    if (!delays.empty()) {
        m.mean_delay_s = mean_of(delays);
        m.p95_delay_s = percentile(delays, 0.95);
    }
    if (highr_delays.size() >= 5) {
        const double p95 = percentile(highr_delays, 0.95);
        const double p05 = percentile(highr_delays, 0.05);
        const double med = percentile(highr_delays, 0.50);
        if (med > 0.0) m.highr_delay_relvar = (p95 - p05) / (2.0 * med);
    }

    m.reroute_per_flow_min = compute_path_stability(out.decisions, out.flow_count, w0, w1);
    m.stability_index = 1.0 - std::min(m.reroute_per_flow_min / 10.0, 1.0);

    const auto [throughput, goodput] = compute_throughput_goodput(
        out.delivered_sem_bytes_window, out.delivered_bg_bytes_window, passing_bytes,
        out.eval_seconds);
    m.throughput_Bps = throughput;
    m.goodput_Bps = goodput;

    // Stabilization at the phase steps, measured on the per-interval mean gap.
    auto gap_series_from = [&](double t0) {
        std::vector<double> series;
        for (const auto& iv : out.intervals)
            if (iv.time >= t0) series.push_back(iv.mean_gap());
        return series;
    };
    const auto after_p2 = gap_series_from(cfg.p1.end_s);
    if (after_p2.size() >= 20) {
        // Only intervals inside the phase window matter for the detector.
        std::vector<double> phase(after_p2.begin(),
                                  after_p2.begin() +
                                      std::min<std::size_t>(after_p2.size(),
                                                            static_cast<std::size_t>(
                                                                (cfg.p2.end_s - cfg.p1.end_s) /
                                                                cfg.control_interval_s)));
        if (phase.size() >= 20) m.stabilization_p2 = stabilization_time(phase);
    }
    const auto after_p3 = gap_series_from(cfg.p2.end_s);
    if (after_p3.size() >= 20) m.stabilization_p3 = stabilization_time(after_p3);

    int corrections = 0, feedback = 0;
    for (const auto& iv : out.intervals) {
        if (iv.time < w0 || iv.time > w1) continue;
        corrections += iv.corrections;
        feedback += iv.feedback;
    }
    m.correction_fraction = feedback > 0 ? static_cast<double>(corrections) / feedback : 0.0;
    m.constraint_violations = out.constraint_violations;
    return m;
}

}  // namespace semnet
