#include "semnet/netsim/simulator.hpp"

#include <cmath>
#include <cstring>

namespace semnet {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

inline void fnv_mix(std::uint64_t& h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= kFnvPrime;
    }
}

inline std::uint64_t bits_of(double d) {
    std::uint64_t u;
    static_assert(sizeof(u) == sizeof(d));
    std::memcpy(&u, &d, sizeof(u));
    return u;
}

}  // namespace

const char* terminal_name(Terminal t) {
    switch (t) {
        case Terminal::in_flight: return "in_flight";
        case Terminal::delivered: return "delivered";
        case Terminal::lost_loss: return "lost_loss";
        case Terminal::lost_break: return "lost_break";
        case Terminal::dropped_no_route: return "dropped_no_route";
    }
    return "in_flight";
}

const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::msg_arrival: return "msg_arrival";
        case EventKind::pkt_depart: return "pkt_depart";
        case EventKind::pkt_deliver: return "pkt_deliver";
        case EventKind::mobility_update: return "mobility_update";
        case EventKind::telemetry_tick: return "telemetry_tick";
        case EventKind::control_tick: return "control_tick";
        case EventKind::bg_toggle: return "bg_toggle";
        case EventKind::bg_chunk: return "bg_chunk";
        case EventKind::phase_transition: return "phase_transition";
        case EventKind::drift_event: return "drift_event";
    }
    return "event";
}

double transit_sigma(int dim, double budget, double gain_mult) {
    if (dim < 2) throw ConfigError("transit_sigma: dimension must be >= 2");
    return gain_mult * std::sqrt(2.0 * std::max(budget, 0.0) / (dim - 1));
}

SemanticVector perturb_in_transit(const SemanticVector& s, double budget, double gain_mult,
                                  Rng& stream) {
    const double sigma = transit_sigma(s.dim(), budget, gain_mult);
    return perturb_embedding(s, sigma, stream);
}

double link_prop_delay(const ScenarioConfig& cfg, std::uint64_t key, int a, int b) {
    const int lo = std::min(a, b), hi = std::max(a, b);
    std::uint64_t h = splitmix64(key ^ splitmix64((static_cast<std::uint64_t>(lo) << 32) |
                                                  static_cast<std::uint64_t>(hi)));
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53;
    return cfg.prop_delay_min_s + (cfg.prop_delay_max_s - cfg.prop_delay_min_s) * u;
}

namespace {

double type_range(const ScenarioConfig& cfg, NodeType t) {
    switch (t) {
        case NodeType::macro: return cfg.range_macro_m;
        case NodeType::small_cell: return cfg.range_small_m;
        case NodeType::relay: return cfg.range_relay_m;
        case NodeType::access_point: return cfg.range_ap_m;
    }
    return cfg.range_ap_m;
}

std::vector<std::pair<int, int>> links_for_positions(const ScenarioConfig& cfg,
                                                     const std::vector<NetNode>& nodes,
                                                     const std::vector<Eigen::Vector2d>& pos) {
    std::vector<std::pair<int, int>> links;
    const int n = static_cast<int>(nodes.size());
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const double reach =
                0.5 * (type_range(cfg, nodes[a].type) + type_range(cfg, nodes[b].type));
            if ((pos[a] - pos[b]).norm() <= reach) links.emplace_back(a, b);
        }
    }
    return links;
}

}  // namespace

Topology generate_topology(const ScenarioConfig& cfg, Rng& rng) {
    const int n = cfg.node_count;
    std::vector<NetNode> nodes(n);
    const int n_macro = std::max(1, static_cast<int>(std::lround(cfg.frac_macro * n)));
    const int n_small = static_cast<int>(std::lround(cfg.frac_small * n));
    const int n_relay = static_cast<int>(std::lround(cfg.frac_relay * n));
    for (int i = 0; i < n; ++i) {
        nodes[i].id = i;
        if (i < n_macro) nodes[i].type = NodeType::macro;
        else if (i < n_macro + n_small) nodes[i].type = NodeType::small_cell;
        else if (i < n_macro + n_small + n_relay) nodes[i].type = NodeType::relay;
        else nodes[i].type = NodeType::access_point;
        nodes[i].mobile =
            nodes[i].type == NodeType::relay || nodes[i].type == NodeType::access_point;
    }

    for (int attempt = 0; attempt < cfg.connect_retries; ++attempt) {
        std::vector<Eigen::Vector2d> pos(n);
        for (int i = 0; i < n; ++i) pos[i] = {rng.uniform(0.0, cfg.area_m), rng.uniform(0.0, cfg.area_m)};
        const auto links = links_for_positions(cfg, nodes, pos);
        std::vector<NetNode> placed = nodes;
        for (int i = 0; i < n; ++i) placed[i].pos = pos[i];
        try {
            return Topology(std::move(placed), links, cfg.area_m);
        } catch (const ConfigError&) {
            continue;  // disconnected draw, retry
        }
    }
    throw ConfigError("generate_topology: no connected layout within retry budget");
}

Simulation::~Simulation() = default;

Simulation::Simulation(ScenarioConfig cfg, Scheme scheme)
    : cfg_(std::move(cfg)), scheme_(scheme), streams_(cfg_.seed) {
    cfg_.validate();
    topo_ = generate_topology(cfg_, streams_.topology);
    chan_ = std::make_unique<ChannelModel>(cfg_, cfg_.node_count, streams_.channel_key);
    out_.scheme = scheme;
    out_.warmup_s = cfg_.warmup_s;
    out_.duration_s = cfg_.duration_s;
    out_.control_interval_s = cfg_.control_interval_s;
    out_.flow_count = cfg_.flow_count;
    out_.eval_seconds = cfg_.duration_s - cfg_.warmup_s;
    out_.min_capacity_seen = cfg_.capacity_max_bps;
    out_.max_capacity_seen = 0.0;

    positions_.resize(cfg_.node_count);
    std::vector<bool> mobile(cfg_.node_count, false);
    for (const auto& n : topo_.nodes()) {
        positions_[n.id] = n.pos;
        mobile[n.id] = n.mobile;
    }
    waypoint_ = RandomWaypoint(cfg_.area_m, cfg_.speed_min_mps, cfg_.speed_max_mps);
    waypoint_.init(mobile, positions_, streams_.mobility);
    chan_->update_positions(positions_);

    semantics_ = std::make_unique<SyntheticSemantics>(cfg_.generator, streams_.semantics);
    if (cfg_.reduce_dim > 0 && cfg_.reduce_dim < cfg_.generator.dim) {
        projection_.emplace(cfg_.generator.dim, cfg_.reduce_dim, streams_.semantics.next_u64());
        semantics_->project(*projection_);
    }
    kplane_ = std::make_unique<Controller>(cfg_, scheme_, semantics_.get());

    nodes_.resize(cfg_.node_count);

    // Fixed flows: src/dst/task triples for the whole run.
    flow_src_.resize(cfg_.flow_count);
    flow_dst_.resize(cfg_.flow_count);
    flow_task_.resize(cfg_.flow_count);
    for (int f = 0; f < cfg_.flow_count; ++f) {
        int src = static_cast<int>(streams_.traffic.uniform_int(cfg_.node_count));
        int dst = static_cast<int>(streams_.traffic.uniform_int(cfg_.node_count));
        while (dst == src) dst = static_cast<int>(streams_.traffic.uniform_int(cfg_.node_count));
        flow_src_[f] = src;
        flow_dst_[f] = dst;
        flow_task_[f] = static_cast<int>(streams_.traffic.uniform_int(semantics_->task_count()));
    }

    bg_.resize(cfg_.bg_sources);
    for (int s = 0; s < cfg_.bg_sources; ++s) {
        int src = static_cast<int>(streams_.traffic.uniform_int(cfg_.node_count));
        int dst = static_cast<int>(streams_.traffic.uniform_int(cfg_.node_count));
        while (dst == src) dst = static_cast<int>(streams_.traffic.uniform_int(cfg_.node_count));
        bg_[s] = {src, dst, false};
    }

    // Topology digest: positions, types, links of the initial layout.
    std::uint64_t h = kFnvOffset;
    for (const auto& n : topo_.nodes()) {
        fnv_mix(h, static_cast<std::uint64_t>(n.id));
        fnv_mix(h, static_cast<std::uint64_t>(n.type));
        fnv_mix(h, bits_of(n.pos.x()));
        fnv_mix(h, bits_of(n.pos.y()));
    }
    for (auto [a, b] : topo_.links()) {
        fnv_mix(h, static_cast<std::uint64_t>(a));
        fnv_mix(h, static_cast<std::uint64_t>(b));
    }
    out_.topology_digest = h;
    out_.arrival_digest = kFnvOffset;
}

void Simulation::enable_event_log(const std::string& path) {
    event_log_ = std::make_unique<std::ofstream>(path);
    if (!*event_log_) throw ConfigError("cannot open event log: " + path);
    *event_log_ << "time,kind,a,b,x\n";
}

void Simulation::log_event(const Event& ev) {
    if (!event_log_) return;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.9f,%s,%d,%d,%.9g\n", ev.time, event_kind_name(ev.kind),
                  ev.a, ev.b, ev.x);
    *event_log_ << buf;
}

int Simulation::alloc_packet() {
    if (!free_packets_.empty()) {
        const int id = free_packets_.back();
        free_packets_.pop_back();
        packets_[id] = Packet{};
        return id;
    }
    packets_.emplace_back();
    return static_cast<int>(packets_.size()) - 1;
}

void Simulation::free_packet(int id) { free_packets_.push_back(id); }

double Simulation::track_capacity(double cap) {
    out_.min_capacity_seen = std::min(out_.min_capacity_seen, cap);
    out_.max_capacity_seen = std::max(out_.max_capacity_seen, cap);
    return cap;
}

double Simulation::current_lambda() const {
    return cfg_.lambda_m * cfg_.phase_load_mult(now_);
}

void Simulation::seed_initial_events() {
    events_.push(0.0, EventKind::telemetry_tick);
    events_.push(0.0, EventKind::control_tick);
    events_.push(cfg_.mobility_tick_s, EventKind::mobility_update);
    if (cfg_.lambda_m > 0.0) {
        const double lam = cfg_.lambda_m * cfg_.phase_load_mult(0.0);
        if (lam > 0.0) events_.push(streams_.traffic.exponential(lam), EventKind::msg_arrival);
    }
    for (int s = 0; s < cfg_.bg_sources; ++s) {
        // Staggered initial OFF period.
        events_.push(streams_.traffic.uniform(cfg_.bg_period_min_s, cfg_.bg_period_max_s),
                     EventKind::bg_toggle, s);
    }
    if (cfg_.p1.end_s < cfg_.duration_s) events_.push(cfg_.p1.end_s, EventKind::phase_transition, 1);
    if (cfg_.p2.end_s < cfg_.duration_s) events_.push(cfg_.p2.end_s, EventKind::phase_transition, 2);
    if (cfg_.drift_fraction > 0.0 && cfg_.drift_time_s < cfg_.duration_s)
        events_.push(cfg_.drift_time_s, EventKind::drift_event);
}

SimOutput Simulation::run() {
    seed_initial_events();
    const double drain_deadline = cfg_.duration_s + 10.0;
    while (!events_.empty()) {
        const Event ev = events_.pop();
        if (ev.time > drain_deadline) break;
        if (ev.time > cfg_.duration_s && ev.kind != EventKind::pkt_depart &&
            ev.kind != EventKind::pkt_deliver) {
            continue;  // past the horizon only the in-flight traffic drains
        }
        if (ev.time > cfg_.duration_s && sem_in_flight_ == 0) break;
        now_ = std::max(now_, ev.time);
        log_event(ev);
        handle(ev);
    }
    // Anything still in flight could not terminate within the drain budget.
    for (auto& m : out_.messages) {
        if (m.terminal == Terminal::in_flight) {
            m.terminal = Terminal::lost_break;
            ++out_.lost_break;
        }
    }
    out_.decisions.shrink_to_fit();
    out_.distortion = kplane_->distortion_log();
    out_.intervals = kplane_->intervals();
    out_.constraint_violations = kplane_->constraint_violations();
    return out_;
}

void Simulation::handle(const Event& ev) {
    switch (ev.kind) {
        case EventKind::msg_arrival: on_msg_arrival(); break;
        case EventKind::pkt_depart: on_pkt_depart(ev.a); break;
        case EventKind::pkt_deliver: on_pkt_deliver(ev.a, ev.b); break;
        case EventKind::mobility_update: on_mobility(); break;
        case EventKind::telemetry_tick: on_telemetry(); break;
        case EventKind::control_tick: on_control(); break;
        case EventKind::bg_toggle: on_bg_toggle(ev.a); break;
        case EventKind::bg_chunk: on_bg_chunk(ev.a, ev.x, ev.b * 1e-9); break;
        case EventKind::phase_transition: break;  // multipliers are read by time
        case EventKind::drift_event: on_drift(); break;
    }
}

void Simulation::on_msg_arrival() {
    // Schedule the successor first so the arrival process never depends on
    // decision handling.
    const double lam = current_lambda();
    if (lam > 0.0) {
        const double next = now_ + streams_.traffic.exponential(lam);
        if (next < cfg_.duration_s) events_.push(next, EventKind::msg_arrival);
    }

    const int flow = rr_flow_;
    rr_flow_ = (rr_flow_ + 1) % cfg_.flow_count;
    const int task = flow_task_[flow];
    const int size = cfg_.msg_min_bytes +
                     static_cast<int>(streams_.traffic.uniform_int(
                         static_cast<std::uint64_t>(cfg_.msg_max_bytes - cfg_.msg_min_bytes + 1)));

    const std::int64_t id = next_msg_++;
    SemanticVector s_ref = semantics_->sample_message(task, streams_.semantics);
    if (projection_) s_ref = projection_->apply(s_ref);
    SemanticVector s_enc = s_ref;
    if (cfg_.noise_sigma > 0.0) {
        // The configured level is the total noise norm; per-component sigma
        // scales with 1/sqrt(dim).
        const double per_comp = cfg_.noise_sigma / std::sqrt(static_cast<double>(s_ref.dim()));
        s_enc = perturb_embedding(s_ref, per_comp, streams_.semantics);
    }
    live_.push_back({s_ref, s_enc});

    fnv_mix(out_.arrival_digest, static_cast<std::uint64_t>(id));
    fnv_mix(out_.arrival_digest, bits_of(now_));
    fnv_mix(out_.arrival_digest, static_cast<std::uint64_t>(flow));
    fnv_mix(out_.arrival_digest, static_cast<std::uint64_t>(size));

    MessageOutcome m;
    m.id = id;
    m.flow = flow;
    m.task = task;
    m.created = now_;
    m.size_bytes = size;
    ++out_.generated;

    MessageContext ctx;
    ctx.id = id;
    ctx.flow = flow;
    ctx.task = task;
    ctx.time = now_;
    ctx.src = flow_src_[flow];
    ctx.dst = flow_dst_[flow];
    ctx.size_bytes = size;
    ctx.embedding = &live_[id].s_enc;

    auto decision = kplane_->decide(ctx);
    m.routed = decision.routed;
    m.r = decision.r;
    m.cls = decision.cls;
    m.fidelity = decision.fidelity;
    m.source = decision.source;
    m.d_hat = decision.d_hat;

    if (!decision.routed) {
        m.terminal = Terminal::dropped_no_route;
        ++out_.dropped_no_route;
        out_.messages.push_back(std::move(m));
        out_.decisions.push_back(std::move(decision));
        return;
    }

    const int pkt = alloc_packet();
    packets_[pkt].semantic = true;
    packets_[pkt].msg = id;
    packets_[pkt].size_bytes = size;
    packets_[pkt].path = std::make_shared<const std::vector<int>>(decision.path);
    packets_[pkt].hop = 0;
    ++sem_in_flight_;
    out_.messages.push_back(std::move(m));
    out_.decisions.push_back(std::move(decision));
    enqueue_packet(flow_src_[flow], pkt);
}

void Simulation::enqueue_packet(int node, int pkt_id) {
    auto& rt = nodes_[node];
    const auto& pkt = packets_[pkt_id];
    if (rt.queue_bytes + pkt.size_bytes > cfg_.queue_capacity_bytes) {
        // Drop-tail overflow counts as a loss event.
        if (pkt.semantic) {
            finalize_semantic(pkt_id, Terminal::lost_loss);
        }
        free_packet(pkt_id);
        return;
    }
    rt.queue.push_back(pkt_id);
    rt.queue_bytes += pkt.size_bytes;
    if (!rt.busy) start_service(node);
}

void Simulation::start_service(int node) {
    auto& rt = nodes_[node];
    while (!rt.queue.empty()) {
        const int pkt_id = rt.queue.front();
        const auto& pkt = packets_[pkt_id];
        const int next = (*pkt.path)[pkt.hop + 1];
        if (!topo_.has_link(node, next)) {
            rt.queue.pop_front();
            rt.queue_bytes -= pkt.size_bytes;
            if (pkt.semantic) finalize_semantic(pkt_id, Terminal::lost_break);
            free_packet(pkt_id);
            continue;
        }
        const double cap = track_capacity(chan_->capacity_bps(node, next));
        const double service = pkt.size_bytes * 8.0 / cap;
        rt.busy = true;
        rt.service_start = now_;
        events_.push(now_ + service, EventKind::pkt_depart, node);
        return;
    }
    rt.busy = false;
}

void Simulation::on_pkt_depart(int node) {
    auto& rt = nodes_[node];
    if (rt.queue.empty()) return;
    const int pkt_id = rt.queue.front();
    rt.queue.pop_front();
    auto& pkt = packets_[pkt_id];
    rt.queue_bytes -= pkt.size_bytes;
    rt.busy_accum += now_ - rt.service_start;
    rt.busy = false;

    const int next = (*pkt.path)[pkt.hop + 1];
    if (!topo_.has_link(node, next)) {
        if (pkt.semantic) finalize_semantic(pkt_id, Terminal::lost_break);
        free_packet(pkt_id);
    } else {
        const double loss_p = chan_->loss_rate(node, next);
        if (streams_.perturbation.uniform() < loss_p) {
            if (pkt.semantic) finalize_semantic(pkt_id, Terminal::lost_loss);
            free_packet(pkt_id);
        } else {
            if (pkt.semantic) {
                const double queue_util =
                    clamp01(rt.queue_bytes / cfg_.queue_capacity_bytes);
                pkt.budget += cfg_.distortion_model.link_term(loss_p, queue_util,
                                                              chan_->sinr_norm(node, next));
            }
            events_.push(now_ + link_prop_delay(cfg_, streams_.channel_key, node, next),
                         EventKind::pkt_deliver, next, pkt_id);
        }
    }
    start_service(node);
}

void Simulation::on_pkt_deliver(int node, int pkt_id) {
    auto& pkt = packets_[pkt_id];
    pkt.hop += 1;
    const int dst = pkt.path->back();
    if (node == dst) {
        if (pkt.semantic) {
            finalize_semantic(pkt_id, Terminal::delivered);
        } else if (now_ >= cfg_.warmup_s && now_ <= cfg_.duration_s) {
            out_.delivered_bg_bytes_window += pkt.size_bytes;
        }
        free_packet(pkt_id);
        return;
    }
    enqueue_packet(node, pkt_id);
}

void Simulation::finalize_semantic(int pkt_id, Terminal terminal) {
    const auto& pkt = packets_[pkt_id];
    auto& m = out_.messages[pkt.msg];
    --sem_in_flight_;
    m.terminal = terminal;
    switch (terminal) {
        case Terminal::delivered: ++out_.delivered; break;
        case Terminal::lost_loss: ++out_.lost_loss; break;
        case Terminal::lost_break: ++out_.lost_break; break;
        default: break;
    }
    if (terminal != Terminal::delivered) return;

    m.delivered_time = now_;
    const auto& live = live_[pkt.msg];
    const double d_enc =
        cfg_.effective_denc(cfg_.fidelity_set().at(m.fidelity).encoder_distortion);
    const auto s_prime = perturb_in_transit(live.s_enc, d_enc + pkt.budget, cfg_.perturb_gain,
                                            streams_.perturbation);
    m.d_obs = observed_distortion(live.s_ref, s_prime);
    if (m.delivered_time >= cfg_.warmup_s && m.delivered_time <= cfg_.duration_s)
        out_.delivered_sem_bytes_window += m.size_bytes;

    DeliveryFeedback fb;
    fb.message_id = m.id;
    fb.flow = m.flow;
    fb.time = now_;
    fb.r = m.r;
    fb.fidelity = m.fidelity;
    fb.d_hat = m.d_hat;
    fb.d_obs = m.d_obs;
    fb.path = *pkt.path;
    pending_feedback_.push_back(std::move(fb));
}

void Simulation::refresh_links() {
    chan_->update_positions(positions_);
    topo_.set_links(links_for_positions(cfg_, topo_.nodes(), positions_));
    for (int i = 0; i < cfg_.node_count; ++i) topo_.set_position(i, positions_[i]);
}

void Simulation::on_mobility() {
    waypoint_.step(positions_, cfg_.mobility_tick_s, cfg_.phase_mobility_mult(now_),
                   streams_.mobility);
    refresh_links();
    const double next = now_ + cfg_.mobility_tick_s;
    if (next < cfg_.duration_s) events_.push(next, EventKind::mobility_update);
}

NetworkStateVector Simulation::node_state(int id) const {
    const auto& rt = nodes_[id];
    NetworkStateVector st;
    const auto& neigh = topo_.neighbors(id);
    double cap_sum = 0.0, loss_sum = 0.0, sinr_sum = 0.0;
    for (int v : neigh) {
        cap_sum += chan_->capacity_bps(id, v);
        loss_sum += chan_->loss_rate(id, v);
        sinr_sum += chan_->sinr_norm(id, v);
    }
    if (!neigh.empty()) {
        const double mean_cap = cap_sum / neigh.size();
        st.delay = clamp01(rt.queue_bytes * 8.0 / mean_cap / cfg_.norm_delay_s);
        st.loss = clamp01(loss_sum / neigh.size());
        st.link_quality = clamp01(sinr_sum / neigh.size());
    } else {
        st.delay = rt.queue_bytes > 0 ? 1.0 : 0.0;
        st.link_quality = 0.0;
    }
    st.queue = clamp01(rt.queue_bytes / cfg_.queue_capacity_bytes);
    const double interval = cfg_.telemetry_interval_s;
    double busy = rt.busy_accum;
    if (rt.busy) busy += now_ - rt.service_start;
    st.load = clamp01(busy / interval);
    st.mobility = clamp01(waypoint_.speed_of(id) * cfg_.phase_mobility_mult(now_) /
                          cfg_.speed_max_mps);
    return st;
}

void Simulation::on_telemetry() {
    chan_->set_shadow_tick(tick_index_);

    const bool outage = cfg_.outage_start_s >= 0.0 && now_ >= cfg_.outage_start_s &&
                        now_ < cfg_.outage_end_s;
    if (!outage) {
        TelemetrySnapshot snap;
        snap.time = now_;
        snap.adjacency = topo_.adjacency();
        snap.nodes.resize(cfg_.node_count);
        for (int u = 0; u < cfg_.node_count; ++u) {
            snap.nodes[u].queue_bytes = nodes_[u].queue_bytes;
            snap.nodes[u].state = node_state(u);
            for (int v : topo_.neighbors(u)) {
                LinkSnapshot l;
                l.prop_delay_s = link_prop_delay(cfg_, streams_.channel_key, u, v);
                l.capacity_bps = track_capacity(chan_->capacity_bps(u, v));
                l.utilization = snap.nodes[u].state.load;
                l.loss_rate = chan_->loss_rate(u, v);
                l.sinr_norm = chan_->sinr_norm(u, v);
                l.queue_util = clamp01(nodes_[u].queue_bytes / cfg_.queue_capacity_bytes);
                snap.links[{u, v}] = l;
            }
        }
        kplane_->on_telemetry(std::move(snap));
    }

    // Busy-time accounting restarts every interval; in-progress service counts
    // from here on.
    for (auto& rt : nodes_) {
        rt.busy_accum = 0.0;
        if (rt.busy) rt.service_start = now_;
    }

    const double next = now_ + cfg_.telemetry_interval_s;
    if (next < cfg_.duration_s) events_.push(next, EventKind::telemetry_tick);
}

void Simulation::on_control() {
    kplane_->begin_interval(tick_index_, now_, pending_feedback_);
    pending_feedback_.clear();
    ++tick_index_;
    const double next = now_ + cfg_.control_interval_s;
    if (next < cfg_.duration_s) events_.push(next, EventKind::control_tick);
}

void Simulation::on_bg_toggle(int source) {
    auto& bg = bg_[source];
    if (!bg.on) {
        // Turning ON: pick a route dispatched by the active scheme and emit
        // fixed-rate chunks for the ON period.
        bg.on = true;
        chan_->set_transmitter(bg.src, true);
        const double on_len = streams_.traffic.uniform(cfg_.bg_period_min_s, cfg_.bg_period_max_s);
        const double rate_on =
            2.0 * cfg_.bg_fraction * cfg_.phase_load_mult(now_) * cfg_.bg_ref_rate_bps;
        const auto path = kplane_->has_snapshot() ? kplane_->route_background(bg.src, bg.dst,
                                                                              cfg_.bg_chunk_bytes)
                                                  : std::vector<int>{};
        if (!path.empty() && rate_on > 0.0) {
            const double interval = cfg_.bg_chunk_bytes * 8.0 / rate_on;
            // Interval is carried in integer nanoseconds through the event.
            const auto shared = std::make_shared<const std::vector<int>>(path);
            bg_paths_[source] = shared;
            events_.push(now_, EventKind::bg_chunk, source,
                         static_cast<int>(interval * 1e9), now_ + on_len);
        }
        events_.push(now_ + on_len, EventKind::bg_toggle, source);
    } else {
        bg.on = false;
        chan_->set_transmitter(bg.src, false);
        const double off_len = streams_.traffic.uniform(cfg_.bg_period_min_s, cfg_.bg_period_max_s);
        events_.push(now_ + off_len, EventKind::bg_toggle, source);
    }
}

void Simulation::on_bg_chunk(int source, double end_time, double interval) {
    const auto& bg = bg_[source];
    if (!bg.on) return;
    auto it = bg_paths_.find(source);
    if (it == bg_paths_.end()) return;
    const int pkt = alloc_packet();
    packets_[pkt].semantic = false;
    packets_[pkt].size_bytes = cfg_.bg_chunk_bytes;
    packets_[pkt].path = it->second;
    packets_[pkt].hop = 0;
    enqueue_packet((*it->second)[0], pkt);
    const double next = now_ + interval;
    if (next < end_time && next < cfg_.duration_s)
        events_.push(next, EventKind::bg_chunk, source, static_cast<int>(interval * 1e9),
                     end_time);
}

void Simulation::on_drift() {
    drifted_ = std::make_unique<SyntheticSemantics>(*semantics_);
    drifted_->set_graph(drift_concepts(semantics_->graph(), cfg_.drift_fraction, cfg_.drift_sigma,
                                       splitmix64(cfg_.seed ^ 0x64726966ULL)));
    kplane_->set_semantics(drifted_.get());
}

}  // namespace semnet
