// Two-stage semantic-aware path cost, constrained selection, and the SP/LBR/
// DMR baseline selectors.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "semnet/routing/candidates.hpp"
#include "semnet/semantics/fidelity.hpp"
#include "semnet/semantics/relevance.hpp"

namespace semnet {

enum class Scheme { sp = 0, lbr = 1, dmr = 2, proposed = 3, naive = 4 };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

struct RoutingConfig {
    int k = 4;
    double eta1 = 0.5;
    double eta2 = 0.5;
    std::array<double, 3> kappa = {0.3, 0.5, 0.7};  // indexed by ImportanceClass
    double delta_max_s = 0.25;
    double load_max = 0.9;
    double d_norm_s = 0.2;

    void validate() const {
        if (std::abs(eta1 + eta2 - 1.0) > 1e-9) throw ConfigError("eta1 + eta2 must equal 1");
        if (k < 1) throw ConfigError("candidate count k must be >= 1");
        for (double v : kappa)
            if (v < 0.0 || v > 1.0) throw ConfigError("kappa values must lie in [0,1]");
    }

    double kappa_for(ImportanceClass c) const { return kappa[static_cast<int>(c)]; }
};

// Per-link distortion contribution from loss, queueing pressure, and SINR.
struct DistortionModel {
    double c_loss = 0.05;
    double c_queue = 0.03;
    double c_sinr = 0.02;
    double cap = 0.05;

    double link_term(double loss_rate, double queue_util, double sinr_norm) const {
        return clamp(c_loss * loss_rate + c_queue * queue_util + c_sinr * (1.0 - sinr_norm), 0.0,
                     cap);
    }
    double link_term(const LinkSnapshot& l) const {
        return link_term(l.loss_rate, l.queue_util, l.sinr_norm);
    }
};

// Fills d(p), l(p) and the per-link impairments from the snapshot. Delay is
// propagation + transmission + expected queue drain per hop; load is the
// bottleneck (max) utilization.
void aggregate_path_metrics(CandidatePath& path, const TelemetrySnapshot& snap, int message_bytes,
                            const DistortionModel& model);

// Multiplicative survival form over the encoder and every link.
double predict_distortion(const std::vector<double>& link_impairments, double encoder_distortion);

inline double semantic_cost_j1(double r, double dhat) {
    if (r < 0.0 || r > 1.0 || dhat < 0.0 || dhat > 1.0)
        throw ValidationError("semantic_cost_j1: inputs outside [0,1]");
    return r * dhat;
}

inline double perf_cost_j2(double delay_s, double load, double eta1, double eta2,
                           double d_norm_s) {
    if (std::abs(eta1 + eta2 - 1.0) > 1e-9) throw ConfigError("eta1 + eta2 must equal 1");
    return eta1 * std::min(delay_s / d_norm_s, 1.0) + eta2 * load;
}

inline double total_cost(ImportanceClass cls, double j1, double j2, const RoutingConfig& cfg) {
    const double kappa = cfg.kappa_for(cls);
    return kappa * j1 + (1.0 - kappa) * j2;
}

struct PathChoice {
    int index = -1;  // into the candidate vector
    double cost = 0.0;
    double j1 = 0.0;
    double j2 = 0.0;
    bool constraint_violated = false;  // served via unfiltered argmin
};

// Constrained argmin of C(m,p). Candidates violating the delay or load bound
// are filtered; when everything violates, falls back to the unfiltered argmin
// and flags the decision. Ties break by fewer hops, then lexicographically.
PathChoice select_path(const std::vector<CandidatePath>& candidates, double r,
                       ImportanceClass cls, const RoutingConfig& cfg);

// SP: fewest hops. LBR: minimum load. DMR: minimum predicted distortion (the
// caller evaluates candidates at the baseline's fixed fidelity). Ties as in
// select_path.
PathChoice baseline_route(Scheme scheme, const std::vector<CandidatePath>& candidates);

}  // namespace semnet
