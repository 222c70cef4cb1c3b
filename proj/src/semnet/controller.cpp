#include "semnet/kplane/controller.hpp"

#include <algorithm>

namespace semnet {

const char* decision_source_name(DecisionSource s) {
    switch (s) {
        case DecisionSource::proposed: return "proposed";
        case DecisionSource::sp: return "sp";
        case DecisionSource::lbr: return "lbr";
        case DecisionSource::dmr: return "dmr";
        case DecisionSource::fallback: return "fallback";
    }
    return "proposed";
}

Controller::Controller(const ScenarioConfig& cfg, Scheme scheme,
                       const SyntheticSemantics* semantics)
    : cfg_(cfg),
      scheme_(scheme),
      semantics_(semantics),
      fidelity_(cfg.fidelity_set()),
      stats_(cfg.relevance_window, cfg.sigma_floor) {}

void Controller::on_telemetry(TelemetrySnapshot snapshot) {
    if (snapshot_ && snapshot.time < snapshot_->time)
        throw SimulationError("telemetry snapshots must not move backwards");
    snapshot_ = std::move(snapshot);
}

double Controller::staleness(double now) const {
    if (!snapshot_) return 1e18;
    return now - snapshot_->time;
}

bool Controller::in_fallback(double now) const {
    return fallback_active(staleness(now), cfg_.control_interval_s, cfg_.fallback_stale_intervals);
}

const TelemetrySnapshot& Controller::snapshot() const {
    if (!snapshot_) throw SimulationError("controller has no telemetry snapshot yet");
    return *snapshot_;
}

std::optional<FidelityId> Controller::flow_fidelity_floor(int flow) const {
    auto it = flows_.find(flow);
    if (it == flows_.end()) return std::nullopt;
    return it->second.floor;
}

void Controller::begin_interval(std::int64_t tick, double time,
                                const std::vector<DeliveryFeedback>& feedback) {
    if (tick_ >= 0) intervals_.push_back(current_);
    tick_ = tick;
    tick_time_ = time;
    current_ = IntervalStats{};
    current_.tick = tick;
    current_.time = time;

    // Expired exclusions drop exactly one interval after creation.
    for (auto& [flow, state] : flows_) {
        auto& ex = state.exclusions;
        ex.erase(std::remove_if(ex.begin(), ex.end(),
                                [&](const auto& e) { return e.second <= tick; }),
                 ex.end());
    }

    // Feedback is processed in message-id order for determinism.
    std::vector<const DeliveryFeedback*> ordered;
    ordered.reserve(feedback.size());
    for (const auto& fb : feedback) ordered.push_back(&fb);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto* a, const auto* b) { return a->message_id < b->message_id; });
    for (const auto* fb : ordered) apply_feedback(*fb);
}

void Controller::apply_feedback(const DeliveryFeedback& fb) {
    const bool closed_loop = scheme_ == Scheme::proposed || scheme_ == Scheme::naive;

    DistortionRecord rec;
    rec.message_id = fb.message_id;
    rec.flow_id = fb.flow;
    rec.time = tick_time_;
    rec.r = fb.r;
    rec.d_hat = fb.d_hat;
    rec.d_obs = fb.d_obs;
    rec.f_before = fb.fidelity;
    rec.f_after = fb.fidelity;
    rec.gap = distortion_gap(fb.d_obs, fb.d_hat);
    rec.tol = tolerance(fb.r, cfg_.control);
    rec.f_temp = static_cast<double>(fb.fidelity) + cfg_.control.lambda * rec.gap;
    rec.action = ControlAction::none;

    if (closed_loop && scheme_ == Scheme::proposed) {
        const auto decision =
            corrective_action(fb.r, fb.fidelity, fb.d_hat, fb.d_obs, cfg_.control, fidelity_);
        rec.action = decision.action;
        rec.tol = decision.tol;
        rec.f_temp = decision.f_temp;
        auto& flow = flows_[fb.flow];
        if (decision.action == ControlAction::fidelity_up) {
            rec.f_after = decision.new_level;
            if (!flow.floor || static_cast<int>(*flow.floor) < static_cast<int>(decision.new_level))
                flow.floor = decision.new_level;
        } else if (decision.action == ControlAction::reroute) {
            flow.exclusions.emplace_back(fb.path, tick_ + cfg_.exclusion_intervals);
        }
    } else if (closed_loop && scheme_ == Scheme::naive) {
        // Diagnostic variant: tolerance floor removed and no fidelity stage,
        // so every excess gap converts directly into a re-route request.
        const double tol = cfg_.control.delta0 * (1.0 - fb.r);
        rec.tol = tol;
        if (rec.gap > tol) {
            rec.action = ControlAction::reroute;
            flows_[fb.flow].exclusions.emplace_back(fb.path, tick_ + cfg_.exclusion_intervals);
        }
    }

    distortion_log_.push_back(rec);
    current_.feedback += 1;
    current_.gap_sum += rec.gap;
    if (rec.action != ControlAction::none) current_.corrections += 1;
}

std::vector<CandidatePath> Controller::build_candidates(int src, int dst, int size_bytes,
                                                        int flow, bool honor_exclusions) {
    const auto& snap = snapshot();
    auto hop_lists = k_shortest_paths(snap.adjacency, src, dst, cfg_.routing.k);
    if (honor_exclusions) {
        auto it = flows_.find(flow);
        if (it != flows_.end() && !it->second.exclusions.empty()) {
            std::vector<std::vector<int>> kept;
            for (auto& hops : hop_lists) {
                bool excluded = false;
                for (const auto& [path, expiry] : it->second.exclusions)
                    if (path == hops) excluded = true;
                if (!excluded) kept.push_back(std::move(hops));
            }
            // An exclusion never strands a flow: if nothing is left, route on
            // the full set.
            if (!kept.empty()) hop_lists = std::move(kept);
        }
    }
    std::vector<CandidatePath> out;
    out.reserve(hop_lists.size());
    for (auto& hops : hop_lists) {
        CandidatePath p;
        p.hops = std::move(hops);
        aggregate_path_metrics(p, snap, size_bytes, cfg_.distortion_model);
        out.push_back(std::move(p));
    }
    return out;
}

ControlDecision Controller::decide(const MessageContext& msg) {
    ControlDecision out;
    out.message_id = msg.id;
    out.flow = msg.flow;
    out.time = msg.time;

    const bool fallback = in_fallback(msg.time);
    const auto& snap = snapshot();

    // Semantic reasoning. In fallback the semantic state stays frozen: scores
    // are computed for the record but nothing is pushed into the window.
    const auto& task = semantics_->task_set(msg.task);
    out.s_align = task_alignment(*msg.embedding, task);
    const auto mapped = map_to_concepts(*msg.embedding, semantics_->graph(), cfg_.tau_map);
    out.c_context = context_score(*msg.embedding, semantics_->graph(), mapped);
    out.u_urgency = urgency(snap.nodes.at(msg.src).state, cfg_.urgency_w);
    out.r = fuse_relevance(out.s_align, out.c_context, out.u_urgency, cfg_.fusion);

    if (fallback) {
        out.z = stats_.empty() ? 0.0 : (out.r - stats_.mean()) / stats_.stddev();
    } else if (!stats_.full()) {
        out.z = cold_start_z(out.r);
        stats_.push(out.r);
    } else {
        out.z = z_normalize(out.r, stats_);
    }
    out.cls = classify(out.z);
    current_.decisions += 1;
    current_.r_sum += out.r;

    // Fidelity: utility selection lifted by any per-flow escalation floor.
    // Baselines and fallback run at fixed mid fidelity.
    if (fallback || scheme_ == Scheme::sp || scheme_ == Scheme::lbr || scheme_ == Scheme::dmr) {
        out.fidelity = FidelityId::mid;
    } else {
        out.fidelity = select_fidelity(out.r, fidelity_, cfg_.omega);
        auto it = flows_.find(msg.flow);
        if (it != flows_.end() && it->second.floor &&
            static_cast<int>(*it->second.floor) > static_cast<int>(out.fidelity))
            out.fidelity = *it->second.floor;
    }
    const double d_enc = cfg_.effective_denc(fidelity_.at(out.fidelity).encoder_distortion);

    // Routing. Per-flow path decisions are cached within a control interval;
    // fidelity and the distortion prediction stay per-message.
    auto& flow_state = flows_[msg.flow];
    const bool proposed_like =
        !fallback && (scheme_ == Scheme::proposed || scheme_ == Scheme::naive);

    std::vector<int> chosen;
    if (flow_state.cache_tick == tick_ && flow_state.cached_path) {
        // The cache only lives within one tick, so the snapshot that produced
        // the cached path is still the active one.
        chosen = *flow_state.cached_path;
        out.path = chosen;
        CandidatePath p;
        p.hops = chosen;
        aggregate_path_metrics(p, snap, msg.size_bytes, cfg_.distortion_model);
        out.d_hat = predict_distortion(p.link_impairments, d_enc);
        out.j1 = semantic_cost_j1(out.r, out.d_hat);
        out.j2 = perf_cost_j2(p.delay_s, p.load, cfg_.routing.eta1, cfg_.routing.eta2,
                              cfg_.routing.d_norm_s);
        out.cost = total_cost(out.cls, out.j1, out.j2, cfg_.routing);
        out.source = fallback ? DecisionSource::fallback
                              : (scheme_ == Scheme::sp    ? DecisionSource::sp
                                 : scheme_ == Scheme::lbr ? DecisionSource::lbr
                                 : scheme_ == Scheme::dmr ? DecisionSource::dmr
                                                          : DecisionSource::proposed);
        out.routed = true;
        return out;
    }

    auto candidates = build_candidates(msg.src, msg.dst, msg.size_bytes, msg.flow, proposed_like);
    if (candidates.empty()) {
        out.routed = false;
        out.source = fallback ? DecisionSource::fallback : DecisionSource::proposed;
        return out;
    }
    for (auto& c : candidates) c.predicted_distortion = predict_distortion(c.link_impairments, d_enc);

    PathChoice choice;
    if (fallback) {
        choice = baseline_route(Scheme::lbr, candidates);
        out.source = DecisionSource::fallback;
    } else {
        switch (scheme_) {
            case Scheme::sp:
                choice = baseline_route(Scheme::sp, candidates);
                out.source = DecisionSource::sp;
                break;
            case Scheme::lbr:
                choice = baseline_route(Scheme::lbr, candidates);
                out.source = DecisionSource::lbr;
                break;
            case Scheme::dmr:
                choice = baseline_route(Scheme::dmr, candidates);
                out.source = DecisionSource::dmr;
                break;
            case Scheme::proposed:
            case Scheme::naive:
                choice = select_path(candidates, out.r, out.cls, cfg_.routing);
                out.source = DecisionSource::proposed;
                break;
        }
    }

    const auto& best = candidates[choice.index];
    out.path = best.hops;
    out.d_hat = best.predicted_distortion;
    out.j1 = semantic_cost_j1(out.r, out.d_hat);
    out.j2 = perf_cost_j2(best.delay_s, best.load, cfg_.routing.eta1, cfg_.routing.eta2,
                          cfg_.routing.d_norm_s);
    out.cost = total_cost(out.cls, out.j1, out.j2, cfg_.routing);
    out.constraint_violated = choice.constraint_violated;
    if (choice.constraint_violated) ++constraint_violations_;
    out.routed = true;
    chosen = out.path;

    flow_state.cached_path = chosen;
    flow_state.cache_tick = tick_;
    return out;
}

std::vector<int> Controller::route_background(int src, int dst, int chunk_bytes) {
    if (!snapshot_) return {};
    auto candidates = build_candidates(src, dst, chunk_bytes, -1, false);
    if (candidates.empty()) return {};
    const double d_enc = cfg_.effective_denc(fidelity_.at(FidelityId::mid).encoder_distortion);
    for (auto& c : candidates) c.predicted_distortion = predict_distortion(c.link_impairments, d_enc);

    PathChoice choice;
    const bool fallback = in_fallback(tick_time_);
    if (fallback) {
        choice = baseline_route(Scheme::lbr, candidates);
    } else {
        switch (scheme_) {
            case Scheme::sp: choice = baseline_route(Scheme::sp, candidates); break;
            case Scheme::lbr: choice = baseline_route(Scheme::lbr, candidates); break;
            case Scheme::dmr: choice = baseline_route(Scheme::dmr, candidates); break;
            case Scheme::proposed:
            case Scheme::naive:
                // Zero relevance: the cost reduces to the delay/load term.
                choice = select_path(candidates, 0.0, ImportanceClass::low, cfg_.routing);
                break;
        }
    }
    return candidates[choice.index].hops;
}

}  // namespace semnet
