#include "semnet/netsim/channel.hpp"

#include <cmath>

#include "semnet/rng.hpp"

namespace semnet {

namespace {
inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
}  // namespace

ChannelModel::ChannelModel(const ScenarioConfig& cfg, int node_count, std::uint64_t shadow_key)
    : cfg_(cfg),
      n_(node_count),
      shadow_key_(shadow_key),
      rx_mw_(node_count, std::vector<double>(node_count, 0.0)),
      interference_mw_(node_count, 0.0),
      tx_on_(node_count, false) {}

double ChannelModel::pathloss_db(double distance_m) const {
    return cfg_.pathloss_a_db + cfg_.pathloss_b_db * std::log10(std::max(distance_m, 1.0));
}

void ChannelModel::update_positions(const std::vector<Eigen::Vector2d>& positions) {
    for (int a = 0; a < n_; ++a) {
        for (int b = a + 1; b < n_; ++b) {
            const double d = (positions[a] - positions[b]).norm();
            const double mw = dbm_to_mw(cfg_.tx_power_dbm - pathloss_db(d));
            rx_mw_[a][b] = mw;
            rx_mw_[b][a] = mw;
        }
    }
    // Interference sums depend on the power table; rebuild from the ON set.
    for (int v = 0; v < n_; ++v) {
        double sum = 0.0;
        for (int w = 0; w < n_; ++w)
            if (tx_on_[w] && w != v) sum += rx_mw_[w][v];
        interference_mw_[v] = sum;
    }
}

void ChannelModel::set_transmitter(int node, bool on) {
    if (tx_on_[node] == on) return;
    tx_on_[node] = on;
    const double sign = on ? 1.0 : -1.0;
    for (int v = 0; v < n_; ++v)
        if (v != node) interference_mw_[v] = std::max(0.0, interference_mw_[v] + sign * rx_mw_[node][v]);
}

void ChannelModel::clear_transmitters() {
    for (int w = 0; w < n_; ++w) tx_on_[w] = false;
    for (int v = 0; v < n_; ++v) interference_mw_[v] = 0.0;
}

double ChannelModel::sinr_db(int from, int to) const {
    const double shadow =
        cfg_.shadowing_sigma_db *
        keyed_normal(shadow_key_, static_cast<std::uint64_t>(shadow_tick_),
                     static_cast<std::uint64_t>(from), static_cast<std::uint64_t>(to));
    const double signal_mw = rx_mw_[from][to] * std::pow(10.0, -shadow / 10.0);
    // The intended transmitter does not interfere with itself.
    double interf = interference_mw_[to];
    if (tx_on_[from]) interf = std::max(0.0, interf - rx_mw_[from][to]);
    const double denom = dbm_to_mw(cfg_.noise_dbm) + interf;
    return 10.0 * std::log10(std::max(signal_mw / denom, 1e-12));
}

double ChannelModel::capacity_bps(int from, int to) const {
    const double sinr_lin = std::pow(10.0, sinr_db(from, to) / 10.0);
    const double shannon = cfg_.bandwidth_hz * std::log2(1.0 + sinr_lin);
    return clamp(shannon, cfg_.capacity_min_bps, cfg_.capacity_max_bps);
}

double ChannelModel::loss_rate(int from, int to) const {
    const double x = (cfg_.loss_midpoint_db - sinr_db(from, to)) * cfg_.loss_slope_per_db;
    return cfg_.loss_ceiling / (1.0 + std::exp(-x));
}

double ChannelModel::sinr_norm(int from, int to) const {
    return clamp01((sinr_db(from, to) - cfg_.sinr_norm_min_db) /
                   (cfg_.sinr_norm_max_db - cfg_.sinr_norm_min_db));
}

}  // namespace semnet
