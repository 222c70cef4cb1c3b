// Closed-loop distortion control: observed-vs-predicted gap, relevance-aware
// tolerance, fidelity escalation with discrete projection, re-routing trigger.
#pragma once

#include <string>

#include "semnet/semantics/fidelity.hpp"
#include "semnet/semantics/semantic_vector.hpp"

namespace semnet {

struct ControlConfig {
    double delta0 = 0.05;     // base tolerance
    double delta_min = 0.01;  // tolerance floor
    double lambda = 0.1;      // adaptation gain

    void validate() const {
        if (!(delta_min > 0.0 && delta_min < delta0))
            throw ConfigError("control: require 0 < delta_min < delta0");
        if (!(lambda > 0.0 && lambda < 1.0))
            throw ConfigError("control: lambda must lie in (0,1)");
    }
};

// Cosine distance between the original and the delivered semantic vector.
inline double observed_distortion(const SemanticVector& s, const SemanticVector& s_prime) {
    return 1.0 - cosine_similarity(s, s_prime);
}

inline double distortion_gap(double d_obs, double d_hat) {
    if (d_obs < 0.0 || d_hat < 0.0) throw ValidationError("distortion_gap: negative input");
    return std::abs(d_obs - d_hat);
}

// Strictly decreasing in relevance, from delta0 down to delta_min.
inline double tolerance(double r, const ControlConfig& cfg) {
    if (r < 0.0 || r > 1.0) throw ValidationError("tolerance: R outside [0,1]");
    return cfg.delta_min + (cfg.delta0 - cfg.delta_min) * (1.0 - r);
}

enum class ControlAction { none = 0, fidelity_up = 1, reroute = 2 };

inline const char* action_name(ControlAction a) {
    switch (a) {
        case ControlAction::none: return "none";
        case ControlAction::fidelity_up: return "fidelity_up";
        case ControlAction::reroute: return "reroute";
    }
    return "none";
}

struct CorrectiveDecision {
    ControlAction action = ControlAction::none;
    FidelityId new_level = FidelityId::mid;  // meaningful when action == fidelity_up
    double gap = 0.0;
    double tol = 0.0;
    double f_temp = 0.0;  // raw tentative fidelity on the numeric level scale
};

// Within tolerance: no action. Otherwise escalate one level when possible
// (ceiling projection of the tentative update), else request re-routing. The
// raw tentative value is kept for diagnostics.
CorrectiveDecision corrective_action(double r, FidelityId current, double d_hat, double d_obs,
                                     const ControlConfig& cfg, const FidelitySet& levels);

// One row of the distortion log.
struct DistortionRecord {
    std::int64_t message_id = -1;
    int flow_id = -1;
    double time = 0.0;
    double r = 0.0;
    double d_hat = 0.0;
    double d_obs = 0.0;
    double gap = 0.0;
    double tol = 0.0;
    ControlAction action = ControlAction::none;
    FidelityId f_before = FidelityId::mid;
    FidelityId f_after = FidelityId::mid;
    double f_temp = 0.0;
};

}  // namespace semnet
