// Closed-loop controller: telemetry ingestion, per-message reasoning ->
// routing -> correction pipeline on the control cadence, per-flow correction
// state, and graceful degradation when telemetry goes stale.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "semnet/distortion/control.hpp"
#include "semnet/netsim/scenario.hpp"
#include "semnet/routing/candidates.hpp"
#include "semnet/routing/costs.hpp"
#include "semnet/routing/telemetry.hpp"
#include "semnet/semantics/generator.hpp"

namespace semnet {

enum class DecisionSource { proposed = 0, sp, lbr, dmr, fallback };
const char* decision_source_name(DecisionSource s);

struct MessageContext {
    std::int64_t id = -1;
    int flow = -1;
    int task = 0;
    double time = 0.0;
    int src = 0;
    int dst = 0;
    int size_bytes = 768;
    const SemanticVector* embedding = nullptr;
};

struct ControlDecision {
    std::int64_t message_id = -1;
    int flow = -1;
    double time = 0.0;
    double s_align = 0.0;
    double c_context = 0.0;
    double u_urgency = 0.0;
    double r = 0.0;
    double z = 0.0;
    ImportanceClass cls = ImportanceClass::medium;
    FidelityId fidelity = FidelityId::mid;
    std::vector<int> path;
    DecisionSource source = DecisionSource::proposed;
    double d_hat = 0.0;
    double j1 = 0.0;
    double j2 = 0.0;
    double cost = 0.0;
    bool constraint_violated = false;
    bool routed = false;
};

struct DeliveryFeedback {
    std::int64_t message_id = -1;
    int flow = -1;
    double time = 0.0;
    double r = 0.0;
    FidelityId fidelity = FidelityId::mid;
    double d_hat = 0.0;
    double d_obs = 0.0;
    std::vector<int> path;
};

// Per-control-interval aggregates, used by the stabilization detector and the
// robustness traces.
struct IntervalStats {
    std::int64_t tick = 0;
    double time = 0.0;
    int decisions = 0;
    int feedback = 0;
    int corrections = 0;  // fidelity_up + reroute
    double gap_sum = 0.0;
    double r_sum = 0.0;

    double mean_gap() const { return feedback > 0 ? gap_sum / feedback : 0.0; }
    double mean_r() const { return decisions > 0 ? r_sum / decisions : 0.0; }
};

// Strictly-greater staleness test against the outage threshold.
inline bool fallback_active(double staleness_s, double control_interval_s, int threshold) {
    return staleness_s > threshold * control_interval_s;
}

class Controller {
public:
    Controller(const ScenarioConfig& cfg, Scheme scheme, const SyntheticSemantics* semantics);

    // Fresh telemetry. Stale telemetry is modeled by simply not calling this.
    void on_telemetry(TelemetrySnapshot snapshot);

    // Starts control interval `tick`, ingesting the feedback collected since
    // the previous tick. Corrections apply to subsequent transmissions.
    void begin_interval(std::int64_t tick, double time,
                        const std::vector<DeliveryFeedback>& feedback);

    ControlDecision decide(const MessageContext& msg);

    // Background bursts ride the same machinery at zero relevance.
    std::vector<int> route_background(int src, int dst, int chunk_bytes);

    bool in_fallback(double now) const;
    double staleness(double now) const;
    bool has_snapshot() const { return snapshot_.has_value(); }
    const TelemetrySnapshot& snapshot() const;

    const std::vector<IntervalStats>& intervals() const { return intervals_; }
    const std::vector<DistortionRecord>& distortion_log() const { return distortion_log_; }
    std::optional<FidelityId> flow_fidelity_floor(int flow) const;
    int constraint_violations() const { return constraint_violations_; }

    // Swap the semantics source (declared drift event).
    void set_semantics(const SyntheticSemantics* semantics) { semantics_ = semantics; }

private:
    const ScenarioConfig& cfg_;
    Scheme scheme_;
    const SyntheticSemantics* semantics_;
    FidelitySet fidelity_;
    RelevanceStats stats_;
    std::optional<TelemetrySnapshot> snapshot_;
    std::int64_t tick_ = -1;
    double tick_time_ = 0.0;

    struct FlowState {
        std::optional<FidelityId> floor;
        std::vector<std::pair<std::vector<int>, std::int64_t>> exclusions;  // path, expiry tick
        std::optional<std::vector<int>> cached_path;  // valid within the current tick
        std::int64_t cache_tick = -1;
    };
    std::map<int, FlowState> flows_;

    std::vector<IntervalStats> intervals_;
    IntervalStats current_;
    std::vector<DistortionRecord> distortion_log_;
    int constraint_violations_ = 0;

    std::vector<CandidatePath> build_candidates(int src, int dst, int size_bytes, int flow,
                                                bool honor_exclusions);
    void apply_feedback(const DeliveryFeedback& fb);
};

}  // namespace semnet
