#include "semnet/netsim/mobility.hpp"

namespace semnet {

void RandomWaypoint::redraw(int i, const Eigen::Vector2d& /*from*/, Rng& rng) {
    states_[i].target = {rng.uniform(0.0, area_), rng.uniform(0.0, area_)};
    states_[i].speed_mps = rng.uniform(speed_min_, speed_max_);
}

void RandomWaypoint::init(const std::vector<bool>& mobile, std::vector<Eigen::Vector2d>& positions,
                          Rng& rng) {
    states_.assign(mobile.size(), {});
    for (std::size_t i = 0; i < mobile.size(); ++i) {
        states_[i].mobile = mobile[i];
        if (mobile[i]) redraw(static_cast<int>(i), positions[i], rng);
    }
}

void RandomWaypoint::step(std::vector<Eigen::Vector2d>& positions, double dt, double speed_mult,
                          Rng& rng) {
    for (std::size_t i = 0; i < states_.size(); ++i) {
        auto& st = states_[i];
        if (!st.mobile) continue;
        double budget = dt * st.speed_mps * speed_mult;
        while (budget > 0.0) {
            const Eigen::Vector2d delta = st.target - positions[i];
            const double dist = delta.norm();
            if (dist <= budget) {
                positions[i] = st.target;
                budget -= dist;
                redraw(static_cast<int>(i), positions[i], rng);
                if (st.speed_mps * speed_mult <= 0.0) break;
            } else {
                positions[i] += delta * (budget / dist);
                budget = 0.0;
            }
        }
    }
}

}  // namespace semnet
