// SINR-driven link model: distance path loss, per-tick log-normal shadowing,
// interference from concurrently-ON background transmitters, Shannon capacity
// with clamping, and a logistic SINR-to-loss map.
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "semnet/netsim/scenario.hpp"
#include "semnet/routing/topology.hpp"

namespace semnet {

class ChannelModel {
public:
    ChannelModel(const ScenarioConfig& cfg, int node_count, std::uint64_t shadow_key);

    // Recompute the mean received-power table from current positions.
    void update_positions(const std::vector<Eigen::Vector2d>& positions);

    // Interference bookkeeping for ON/OFF background transmitters.
    void set_transmitter(int node, bool on);
    void clear_transmitters();

    // Advance the shadowing realization (once per telemetry interval).
    void set_shadow_tick(std::int64_t tick) { shadow_tick_ = tick; }

    double rx_power_mw(int from, int to) const { return rx_mw_[from][to]; }
    double sinr_db(int from, int to) const;
    double capacity_bps(int from, int to) const;
    double loss_rate(int from, int to) const;
    double sinr_norm(int from, int to) const;

    double pathloss_db(double distance_m) const;

private:
    const ScenarioConfig& cfg_;
    int n_;
    std::uint64_t shadow_key_;
    std::int64_t shadow_tick_ = 0;
    std::vector<std::vector<double>> rx_mw_;  // mean rx power, no shadowing
    std::vector<double> interference_mw_;     // per receiver
    std::vector<bool> tx_on_;
};

}  // namespace semnet
