// Random waypoint mobility for the mobile node subset.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "semnet/rng.hpp"

namespace semnet {

struct WaypointState {
    Eigen::Vector2d target{0.0, 0.0};
    double speed_mps = 0.0;
    bool mobile = false;
};

class RandomWaypoint {
public:
    RandomWaypoint() = default;
    RandomWaypoint(double area_m, double speed_min, double speed_max)
        : area_(area_m), speed_min_(speed_min), speed_max_(speed_max) {}

    void init(const std::vector<bool>& mobile, std::vector<Eigen::Vector2d>& positions, Rng& rng);

    // Advance dt seconds; speed_mult scales the drawn speeds (phase schedule).
    void step(std::vector<Eigen::Vector2d>& positions, double dt, double speed_mult, Rng& rng);

    double speed_of(int node) const { return states_.at(node).mobile ? states_[node].speed_mps : 0.0; }

private:
    double area_ = 1000.0;
    double speed_min_ = 1.0;
    double speed_max_ = 15.0;
    std::vector<WaypointState> states_;

    void redraw(int i, const Eigen::Vector2d& from, Rng& rng);
};

}  // namespace semnet
