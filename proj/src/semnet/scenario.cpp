#include "semnet/netsim/scenario.hpp"

#include <fstream>
#include <sstream>

namespace semnet {

double ScenarioConfig::projection_loss() const {
    if (reduce_dim <= 0 || reduce_dim >= generator.dim) return 0.0;
    return proj_loss_coeff * (1.0 - static_cast<double>(reduce_dim) / generator.dim);
}

double ScenarioConfig::effective_denc(double denc) const {
    const double loss = projection_loss();
    return 1.0 - (1.0 - denc) * (1.0 - loss);
}

double ScenarioConfig::phase_load_mult(double t) const {
    if (t < p1.end_s) return p1.load_mult;
    if (t < p2.end_s) return p2.load_mult;
    return p3.load_mult;
}

double ScenarioConfig::phase_mobility_mult(double t) const {
    if (t < p1.end_s) return p1.mobility_mult;
    if (t < p2.end_s) return p2.mobility_mult;
    return p3.mobility_mult;
}

void ScenarioConfig::validate() const {
    if (node_count < 2) throw ConfigError("node_count must be >= 2");
    if (!(warmup_s < duration_s)) throw ConfigError("warmup must precede duration end");
    if (!(p1.end_s > 0.0 && p1.end_s <= p2.end_s && p2.end_s <= p3.end_s))
        throw ConfigError("phase boundaries must be nondecreasing and positive");
    if (std::abs(p3.end_s - duration_s) > 1e-9)
        throw ConfigError("phase boundaries must partition [0, duration]");
    if (p1.load_mult < 0 || p2.load_mult < 0 || p3.load_mult < 0)
        throw ConfigError("phase load multipliers must be nonnegative");
    if (telemetry_interval_s <= 0 || control_interval_s <= 0)
        throw ConfigError("intervals must be positive");
    if (msg_min_bytes > msg_max_bytes) throw ConfigError("message size range inverted");
    if (generator.graph_nodes < 2) throw ConfigError("knowledge graph too small");
    if (reduce_dim < 0 || reduce_dim > generator.dim)
        throw ConfigError("reduce_dim outside [0, dim]");
    if (frac_macro + frac_small + frac_relay > 1.0 + 1e-9)
        throw ConfigError("node type fractions exceed 1");
    routing.validate();
    control.validate();
    fidelity_set();  // ordering check
    if (std::abs(fusion.alpha + fusion.beta + fusion.gamma - 1.0) > 1e-9)
        throw ConfigError("fusion weights must sum to 1");
}

namespace {

double to_double(const std::string& v, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": " + v);
    }
}

int to_int(const std::string& v, const std::string& key) {
    return static_cast<int>(to_double(v, key));
}

}  // namespace

void apply_scenario_key(ScenarioConfig& c, const std::string& section, const std::string& key,
                        const std::string& value) {
    const std::string full = section.empty() ? key : section + "." + key;
    const auto d = [&] { return to_double(value, full); };
    const auto i = [&] { return to_int(value, full); };

    if (full == "sim.seed") c.seed = static_cast<std::uint64_t>(to_double(value, full));
    else if (full == "sim.duration_s") c.duration_s = d();
    else if (full == "sim.warmup_s") c.warmup_s = d();
    else if (full == "sim.node_count") c.node_count = i();
    else if (full == "sim.area_m") c.area_m = d();
    else if (full == "sim.telemetry_interval_s") c.telemetry_interval_s = d();
    else if (full == "sim.control_interval_s") c.control_interval_s = d();
    else if (full == "sim.mobility_tick_s") c.mobility_tick_s = d();
    else if (full == "sim.queue_capacity_bytes") c.queue_capacity_bytes = d();
    else if (full == "sim.connect_retries") c.connect_retries = i();
    else if (full == "sim.name") c.name = value;
    else if (full == "radio.bandwidth_hz") c.bandwidth_hz = d();
    else if (full == "radio.capacity_min_bps") c.capacity_min_bps = d();
    else if (full == "radio.capacity_max_bps") c.capacity_max_bps = d();
    else if (full == "radio.prop_delay_min_s") c.prop_delay_min_s = d();
    else if (full == "radio.prop_delay_max_s") c.prop_delay_max_s = d();
    else if (full == "radio.tx_power_dbm") c.tx_power_dbm = d();
    else if (full == "radio.noise_dbm") c.noise_dbm = d();
    else if (full == "radio.pathloss_a_db") c.pathloss_a_db = d();
    else if (full == "radio.pathloss_b_db") c.pathloss_b_db = d();
    else if (full == "radio.shadowing_sigma_db") c.shadowing_sigma_db = d();
    else if (full == "radio.sinr_norm_min_db") c.sinr_norm_min_db = d();
    else if (full == "radio.sinr_norm_max_db") c.sinr_norm_max_db = d();
    else if (full == "radio.loss_midpoint_db") c.loss_midpoint_db = d();
    else if (full == "radio.loss_slope_per_db") c.loss_slope_per_db = d();
    else if (full == "radio.loss_ceiling") c.loss_ceiling = d();
    else if (full == "radio.range_macro_m") c.range_macro_m = d();
    else if (full == "radio.range_small_m") c.range_small_m = d();
    else if (full == "radio.range_relay_m") c.range_relay_m = d();
    else if (full == "radio.range_ap_m") c.range_ap_m = d();
    else if (full == "radio.frac_macro") c.frac_macro = d();
    else if (full == "radio.frac_small") c.frac_small = d();
    else if (full == "radio.frac_relay") c.frac_relay = d();
    else if (full == "radio.speed_min_mps") c.speed_min_mps = d();
    else if (full == "radio.speed_max_mps") c.speed_max_mps = d();
    else if (full == "traffic.lambda_m") c.lambda_m = d();
    else if (full == "traffic.flow_count") c.flow_count = i();
    else if (full == "traffic.msg_min_bytes") c.msg_min_bytes = i();
    else if (full == "traffic.msg_max_bytes") c.msg_max_bytes = i();
    else if (full == "traffic.bg_sources") c.bg_sources = i();
    else if (full == "traffic.bg_period_min_s") c.bg_period_min_s = d();
    else if (full == "traffic.bg_period_max_s") c.bg_period_max_s = d();
    else if (full == "traffic.bg_fraction") c.bg_fraction = d();
    else if (full == "traffic.bg_ref_rate_bps") c.bg_ref_rate_bps = d();
    else if (full == "traffic.bg_chunk_bytes") c.bg_chunk_bytes = i();
    else if (full == "semantics.dim") c.generator.dim = i();
    else if (full == "semantics.tasks") c.generator.tasks = i();
    else if (full == "semantics.concepts_per_task_set") c.generator.concepts_per_task_set = i();
    else if (full == "semantics.graph_nodes") c.generator.graph_nodes = i();
    else if (full == "semantics.graph_degree") c.generator.graph_degree = i();
    else if (full == "semantics.concept_sigma") c.generator.concept_sigma = d();
    else if (full == "semantics.message_sigma") c.generator.message_sigma = d();
    else if (full == "semantics.task_set_sigma") c.generator.task_set_sigma = d();
    else if (full == "semantics.alpha") c.fusion.alpha = d();
    else if (full == "semantics.beta") c.fusion.beta = d();
    else if (full == "semantics.gamma") c.fusion.gamma = d();
    else if (full == "semantics.w_delay") c.urgency_w.delay = d();
    else if (full == "semantics.w_queue") c.urgency_w.queue = d();
    else if (full == "semantics.w_load") c.urgency_w.load = d();
    else if (full == "semantics.w_mobility") c.urgency_w.mobility = d();
    else if (full == "semantics.w_loss") c.urgency_w.loss = d();
    else if (full == "semantics.w_linkq") c.urgency_w.link = d();
    else if (full == "semantics.relevance_window") c.relevance_window = static_cast<std::size_t>(i());
    else if (full == "semantics.sigma_floor") c.sigma_floor = d();
    else if (full == "semantics.tau_map") c.tau_map = d();
    else if (full == "semantics.omega") c.omega = d();
    else if (full == "semantics.q_low") c.q_low = d();
    else if (full == "semantics.q_mid") c.q_mid = d();
    else if (full == "semantics.q_high") c.q_high = d();
    else if (full == "semantics.b_low") c.b_low = d();
    else if (full == "semantics.b_mid") c.b_mid = d();
    else if (full == "semantics.b_high") c.b_high = d();
    else if (full == "semantics.denc_low") c.denc_low = d();
    else if (full == "semantics.denc_mid") c.denc_mid = d();
    else if (full == "semantics.denc_high") c.denc_high = d();
    else if (full == "semantics.norm_delay_s") c.norm_delay_s = d();
    else if (full == "routing.k") c.routing.k = i();
    else if (full == "routing.eta1") c.routing.eta1 = d();
    else if (full == "routing.eta2") c.routing.eta2 = d();
    else if (full == "routing.kappa_low") c.routing.kappa[0] = d();
    else if (full == "routing.kappa_mid") c.routing.kappa[1] = d();
    else if (full == "routing.kappa_high") c.routing.kappa[2] = d();
    else if (full == "routing.delta_max_s") c.routing.delta_max_s = d();
    else if (full == "routing.load_max") c.routing.load_max = d();
    else if (full == "routing.d_norm_s") c.routing.d_norm_s = d();
    else if (full == "routing.dlink_loss") c.distortion_model.c_loss = d();
    else if (full == "routing.dlink_queue") c.distortion_model.c_queue = d();
    else if (full == "routing.dlink_sinr") c.distortion_model.c_sinr = d();
    else if (full == "routing.dlink_cap") c.distortion_model.cap = d();
    else if (full == "control.delta0") c.control.delta0 = d();
    else if (full == "control.delta_min") c.control.delta_min = d();
    else if (full == "control.lambda") c.control.lambda = d();
    else if (full == "control.fallback_stale_intervals") c.fallback_stale_intervals = i();
    else if (full == "control.exclusion_intervals") c.exclusion_intervals = i();
    else if (full == "phases.p1_end_s") c.p1.end_s = d();
    else if (full == "phases.p2_end_s") c.p2.end_s = d();
    else if (full == "phases.p3_end_s") c.p3.end_s = d();
    else if (full == "phases.p1_load") c.p1.load_mult = d();
    else if (full == "phases.p2_load") c.p2.load_mult = d();
    else if (full == "phases.p3_load") c.p3.load_mult = d();
    else if (full == "phases.p1_mobility") c.p1.mobility_mult = d();
    else if (full == "phases.p2_mobility") c.p2.mobility_mult = d();
    else if (full == "phases.p3_mobility") c.p3.mobility_mult = d();
    else if (full == "robustness.noise_sigma") c.noise_sigma = d();
    else if (full == "robustness.reduce_dim") c.reduce_dim = i();
    else if (full == "robustness.drift_fraction") c.drift_fraction = d();
    else if (full == "robustness.drift_sigma") c.drift_sigma = d();
    else if (full == "robustness.drift_time_s") c.drift_time_s = d();
    else if (full == "robustness.proj_loss_coeff") c.proj_loss_coeff = d();
    else if (full == "robustness.perturb_gain") c.perturb_gain = d();
    else if (full == "telemetry.outage_start_s") c.outage_start_s = d();
    else if (full == "telemetry.outage_end_s") c.outage_end_s = d();
    else throw ConfigError("unknown scenario key: " + full);
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    ScenarioConfig cfg;
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        // Trim.
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        line = line.substr(b, e - b + 1);
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(path + ":" + std::to_string(lineno) + ": malformed section");
            section = line.substr(1, line.size() - 2);
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        auto trim = [](std::string s) {
            const auto b2 = s.find_first_not_of(" \t");
            const auto e2 = s.find_last_not_of(" \t");
            return b2 == std::string::npos ? std::string{} : s.substr(b2, e2 - b2 + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key or value");
        apply_scenario_key(cfg, section, key, value);
    }
    cfg.validate();
    return cfg;
}

}  // namespace semnet
