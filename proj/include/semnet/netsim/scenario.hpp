// Scenario configuration: every tunable of a run, pre-filled with the
// defaults from the evaluation setup. Loadable from a flat key = value file
// with [section] headers; omitted keys keep their defaults.
#pragma once

#include <cstdint>
#include <string>

#include "semnet/distortion/control.hpp"
#include "semnet/routing/costs.hpp"
#include "semnet/semantics/generator.hpp"
#include "semnet/semantics/relevance.hpp"

namespace semnet {

struct PhaseSpec {
    double end_s = 0.0;  // phase covers [previous end, end_s)
    double load_mult = 1.0;
    double mobility_mult = 1.0;
};

struct ScenarioConfig {
    // [sim]
    std::uint64_t seed = 1;
    double duration_s = 180.0;
    double warmup_s = 20.0;
    int node_count = 50;
    double area_m = 1000.0;
    double telemetry_interval_s = 0.2;
    double control_interval_s = 0.2;
    double mobility_tick_s = 0.1;
    double queue_capacity_bytes = 262144.0;
    int connect_retries = 100;

    // [radio]
    double bandwidth_hz = 1e8;
    double capacity_min_bps = 80e6;
    double capacity_max_bps = 900e6;
    double prop_delay_min_s = 0.001;
    double prop_delay_max_s = 0.003;
    double tx_power_dbm = 23.0;
    double noise_dbm = -87.0;
    double pathloss_a_db = 28.0;
    double pathloss_b_db = 22.0;
    double shadowing_sigma_db = 4.0;
    double sinr_norm_min_db = -5.0;
    double sinr_norm_max_db = 30.0;
    double loss_midpoint_db = 3.0;
    double loss_slope_per_db = 1.0;
    double loss_ceiling = 0.05;
    double range_macro_m = 400.0;
    double range_small_m = 250.0;
    double range_relay_m = 200.0;
    double range_ap_m = 150.0;
    double frac_macro = 0.10;
    double frac_small = 0.30;
    double frac_relay = 0.30;  // remainder becomes access points
    double speed_min_mps = 1.0;
    double speed_max_mps = 15.0;

    // [traffic]
    double lambda_m = 15.0;  // aggregate semantic messages per second
    int flow_count = 30;
    int msg_min_bytes = 512;
    int msg_max_bytes = 1024;
    int bg_sources = 12;
    double bg_period_min_s = 0.02;
    double bg_period_max_s = 0.06;
    double bg_fraction = 0.5;        // target share of the reference capacity
    double bg_ref_rate_bps = 150e6;  // reference capacity for sizing bursts
    int bg_chunk_bytes = 65536;

    // [semantics]
    GeneratorConfig generator;
    FusionWeights fusion;
    UrgencyWeights urgency_w;
    std::size_t relevance_window = 200;
    double sigma_floor = 1e-6;
    double tau_map = 0.7;
    double omega = 0.3;
    double q_low = 0.5, q_mid = 0.8, q_high = 1.0;
    double b_low = 0.2, b_mid = 0.5, b_high = 1.0;
    double denc_low = 0.025, denc_mid = 0.010, denc_high = 0.002;
    double norm_delay_s = 0.05;  // queue-drain normalization for urgency

    // [routing]
    RoutingConfig routing;
    DistortionModel distortion_model;

    // [control]
    ControlConfig control;
    int fallback_stale_intervals = 3;
    int exclusion_intervals = 1;

    // [phases]
    PhaseSpec p1{60.0, 1.0, 0.5};
    PhaseSpec p2{120.0, 1.5, 1.5};
    PhaseSpec p3{180.0, 1.8, 2.0};

    // [robustness]
    double noise_sigma = 0.0;      // total noise norm injected into embeddings
    int reduce_dim = 0;            // 0 = native dimension
    double drift_fraction = 0.0;
    double drift_sigma = 0.2;
    double drift_time_s = 90.0;
    double proj_loss_coeff = 0.03;  // extra encoder distortion per discarded dim share
    double perturb_gain = 1.0;      // multiplier on the calibrated transit-noise gain

    // [telemetry]
    double outage_start_s = -1.0;
    double outage_end_s = -1.0;

    std::string name = "default";

    FidelitySet fidelity_set() const {
        return FidelitySet({FidelityId::low, q_low, b_low, denc_low},
                           {FidelityId::mid, q_mid, b_mid, denc_mid},
                           {FidelityId::high, q_high, b_high, denc_high});
    }

    // Effective encoder distortion once dimension-reduction loss is folded in.
    double effective_denc(double denc) const;
    double projection_loss() const;

    double phase_load_mult(double t) const;
    double phase_mobility_mult(double t) const;

    void validate() const;
};

ScenarioConfig load_scenario(const std::string& path);
void apply_scenario_key(ScenarioConfig& cfg, const std::string& section, const std::string& key,
                        const std::string& value);

}  // namespace semnet
