#include "semnet/routing/costs.hpp"

#include <algorithm>
#include <cmath>

namespace semnet {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::sp: return "sp";
        case Scheme::lbr: return "lbr";
        case Scheme::dmr: return "dmr";
        case Scheme::proposed: return "proposed";
        case Scheme::naive: return "naive";
    }
    return "proposed";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "sp" || name == "SP") return Scheme::sp;
    if (name == "lbr" || name == "LBR") return Scheme::lbr;
    if (name == "dmr" || name == "DMR") return Scheme::dmr;
    if (name == "proposed") return Scheme::proposed;
    if (name == "naive") return Scheme::naive;
    throw ConfigError("unknown scheme: " + name);
}

void aggregate_path_metrics(CandidatePath& path, const TelemetrySnapshot& snap, int message_bytes,
                            const DistortionModel& model) {
    path.delay_s = 0.0;
    path.load = 0.0;
    path.link_impairments.clear();
    for (std::size_t i = 0; i + 1 < path.hops.size(); ++i) {
        const int u = path.hops[i];
        const int v = path.hops[i + 1];
        const LinkSnapshot& link = snap.link(u, v);
        const double tx = static_cast<double>(message_bytes) * 8.0 / link.capacity_bps;
        const double queue_drain =
            snap.nodes.at(u).queue_bytes * 8.0 / link.capacity_bps;
        path.delay_s += link.prop_delay_s + tx + queue_drain;
        path.load = std::max(path.load, link.utilization);
        path.link_impairments.push_back(model.link_term(link));
    }
}

double predict_distortion(const std::vector<double>& link_impairments,
                          double encoder_distortion) {
    double survival = 1.0 - encoder_distortion;
    for (double d : link_impairments) survival *= 1.0 - clamp01(d);
    return clamp01(1.0 - survival);
}

namespace {

// Tie-break shared by every selector: fewer hops first, then lexicographic.
bool better_tie(const CandidatePath& a, const CandidatePath& b) {
    if (a.hops.size() != b.hops.size()) return a.hops.size() < b.hops.size();
    return a.hops < b.hops;
}

template <typename Key>
int argmin_with_ties(const std::vector<CandidatePath>& candidates, const std::vector<int>& pool,
                     Key key) {
    int best = -1;
    double best_key = 0.0;
    for (int i : pool) {
        const double k = key(candidates[i]);
        if (best < 0 || k < best_key ||
            (k == best_key && better_tie(candidates[i], candidates[best]))) {
            best = i;
            best_key = k;
        }
    }
    return best;
}

}  // namespace

PathChoice select_path(const std::vector<CandidatePath>& candidates, double r,
                       ImportanceClass cls, const RoutingConfig& cfg) {
    if (candidates.empty()) throw SimulationError("select_path: empty candidate set");
    cfg.validate();

    std::vector<int> admissible;
    std::vector<int> all;
    for (int i = 0; i < static_cast<int>(candidates.size()); ++i) {
        all.push_back(i);
        if (candidates[i].delay_s <= cfg.delta_max_s && candidates[i].load <= cfg.load_max)
            admissible.push_back(i);
    }
    const bool violated = admissible.empty();
    const auto& pool = violated ? all : admissible;

    const auto cost_of = [&](const CandidatePath& p) {
        const double j1 = semantic_cost_j1(r, p.predicted_distortion);
        const double j2 = perf_cost_j2(p.delay_s, p.load, cfg.eta1, cfg.eta2, cfg.d_norm_s);
        return total_cost(cls, j1, j2, cfg);
    };
    const int best = argmin_with_ties(candidates, pool, cost_of);

    PathChoice choice;
    choice.index = best;
    choice.j1 = semantic_cost_j1(r, candidates[best].predicted_distortion);
    choice.j2 = perf_cost_j2(candidates[best].delay_s, candidates[best].load, cfg.eta1, cfg.eta2,
                             cfg.d_norm_s);
    choice.cost = total_cost(cls, choice.j1, choice.j2, cfg);
    choice.constraint_violated = violated;
    return choice;
}

PathChoice baseline_route(Scheme scheme, const std::vector<CandidatePath>& candidates) {
    if (candidates.empty()) throw SimulationError("baseline_route: empty candidate set");
    std::vector<int> all(candidates.size());
    for (int i = 0; i < static_cast<int>(candidates.size()); ++i) all[i] = i;

    int best = -1;
    switch (scheme) {
        case Scheme::sp:
            best = argmin_with_ties(candidates, all, [](const CandidatePath& p) {
                return static_cast<double>(p.hops.size());
            });
            break;
        case Scheme::lbr:
            best = argmin_with_ties(candidates, all,
                                    [](const CandidatePath& p) { return p.load; });
            break;
        case Scheme::dmr:
            best = argmin_with_ties(candidates, all, [](const CandidatePath& p) {
                return p.predicted_distortion;
            });
            break;
        default:
            throw ConfigError("baseline_route: not a baseline scheme");
    }
    PathChoice choice;
    choice.index = best;
    return choice;
}

}  // namespace semnet
