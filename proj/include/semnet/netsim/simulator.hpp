// The seeded discrete-event simulator: topology generation, random-waypoint
// mobility, SINR-driven links, per-node FIFO queues, Poisson semantic traffic
// with ON/OFF background bursts, in-transit semantic perturbation, telemetry
// export, and the embedded Knowledge-Plane controller.
#pragma once

#include <deque>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "semnet/kplane/controller.hpp"
#include "semnet/netsim/channel.hpp"
#include "semnet/netsim/events.hpp"
#include "semnet/netsim/mobility.hpp"
#include "semnet/netsim/scenario.hpp"

namespace semnet {

enum class Terminal { in_flight = 0, delivered, lost_loss, lost_break, dropped_no_route };
const char* terminal_name(Terminal t);

struct MessageOutcome {
    std::int64_t id = -1;
    int flow = -1;
    int task = 0;
    double created = 0.0;
    int size_bytes = 0;
    bool routed = false;
    double r = 0.0;
    ImportanceClass cls = ImportanceClass::medium;
    FidelityId fidelity = FidelityId::mid;
    DecisionSource source = DecisionSource::proposed;
    double d_hat = 0.0;
    Terminal terminal = Terminal::in_flight;
    double delivered_time = 0.0;
    double d_obs = 0.0;
};

struct SimOutput {
    Scheme scheme = Scheme::proposed;
    std::vector<ControlDecision> decisions;
    std::vector<DistortionRecord> distortion;
    std::vector<IntervalStats> intervals;
    std::vector<MessageOutcome> messages;

    double delivered_sem_bytes_window = 0.0;
    double delivered_bg_bytes_window = 0.0;
    double eval_seconds = 0.0;
    double warmup_s = 0.0;
    double duration_s = 0.0;
    double control_interval_s = 0.0;
    int flow_count = 0;

    std::int64_t generated = 0;
    std::int64_t delivered = 0;
    std::int64_t lost_loss = 0;
    std::int64_t lost_break = 0;
    std::int64_t dropped_no_route = 0;

    double min_capacity_seen = 0.0;
    double max_capacity_seen = 0.0;
    int constraint_violations = 0;

    std::uint64_t topology_digest = 0;
    std::uint64_t arrival_digest = 0;
};

// Transit perturbation calibrated so the expected cosine distortion of the
// delivered vector matches the accumulated impairment budget at any embedding
// dimension.
SemanticVector perturb_in_transit(const SemanticVector& s, double budget, double gain_mult,
                                  Rng& stream);
double transit_sigma(int dim, double budget, double gain_mult);

// Uniform node placement with a type mix and type-dependent radio ranges;
// regenerates until connected (bounded retries).
Topology generate_topology(const ScenarioConfig& cfg, Rng& topology_stream);

// Deterministic per-link propagation delay in the configured range.
double link_prop_delay(const ScenarioConfig& cfg, std::uint64_t key, int a, int b);

class Simulation {
public:
    Simulation(ScenarioConfig cfg, Scheme scheme);
    ~Simulation();

    // Optional verbose event log (one CSV row per processed event).
    void enable_event_log(const std::string& path);

    SimOutput run();

    // Test hooks.
    const Topology& topology() const { return topo_; }
    const Controller& controller() const { return *kplane_; }

private:
    ScenarioConfig cfg_;
    Scheme scheme_;
    StreamSet streams_;
    Topology topo_;
    std::vector<Eigen::Vector2d> positions_;
    RandomWaypoint waypoint_;
    std::unique_ptr<ChannelModel> chan_;
    std::unique_ptr<SyntheticSemantics> semantics_;
    std::unique_ptr<SyntheticSemantics> drifted_;
    std::optional<RandomProjection> projection_;
    std::unique_ptr<Controller> kplane_;
    EventQueue events_;
    SimOutput out_;

    struct Packet {
        bool semantic = false;
        std::int64_t msg = -1;  // message index when semantic
        int size_bytes = 0;
        std::shared_ptr<const std::vector<int>> path;
        int hop = 0;
        double budget = 0.0;  // accumulated realized link impairments
    };
    std::vector<Packet> packets_;
    std::vector<int> free_packets_;

    struct NodeRt {
        std::deque<int> queue;
        double queue_bytes = 0.0;
        bool busy = false;
        double service_start = 0.0;
        double busy_accum = 0.0;
    };
    std::vector<NodeRt> nodes_;

    struct BgSource {
        int src = -1;
        int dst = -1;
        bool on = false;
    };
    std::vector<BgSource> bg_;
    std::map<int, std::shared_ptr<const std::vector<int>>> bg_paths_;

    struct Live {
        SemanticVector s_ref;
        SemanticVector s_enc;
    };
    std::vector<Live> live_;

    std::vector<int> flow_src_;
    std::vector<int> flow_dst_;
    std::vector<int> flow_task_;
    std::vector<DeliveryFeedback> pending_feedback_;
    std::int64_t next_msg_ = 0;
    int rr_flow_ = 0;
    std::int64_t tick_index_ = 0;
    int sem_in_flight_ = 0;
    double now_ = 0.0;
    std::unique_ptr<std::ofstream> event_log_;

    void seed_initial_events();
    void handle(const Event& ev);
    void on_msg_arrival();
    void on_pkt_depart(int node);
    void on_pkt_deliver(int node, int pkt_id);
    void on_mobility();
    void on_telemetry();
    void on_control();
    void on_bg_toggle(int source);
    void on_bg_chunk(int source, double end_time, double interval);
    void on_drift();

    void enqueue_packet(int node, int pkt_id);
    void start_service(int node);
    void finalize_semantic(int pkt_id, Terminal terminal);
    void refresh_links();
    double track_capacity(double cap);
    void log_event(const Event& ev);
    NetworkStateVector node_state(int id) const;
    double current_lambda() const;
    int alloc_packet();
    void free_packet(int id);
};

}  // namespace semnet
