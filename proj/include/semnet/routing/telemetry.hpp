// Frozen telemetry snapshot handed to the Knowledge Plane at each tick.
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "semnet/semantics/relevance.hpp"

namespace semnet {

using LinkKey = std::pair<int, int>;  // directed (from, to)

struct LinkSnapshot {
    double prop_delay_s = 0.001;
    double capacity_bps = 1e8;
    double utilization = 0.0;  // sending node busy fraction, [0,1]
    double loss_rate = 0.0;
    double sinr_norm = 1.0;    // normalized SINR in [0,1]
    double queue_util = 0.0;   // sending node queue occupancy, [0,1]
};

struct NodeTelemetry {
    double queue_bytes = 0.0;
    NetworkStateVector state;
};

// Immutable copy of the network state at one telemetry tick. Decisions between
// ticks all evaluate against the same snapshot.
struct TelemetrySnapshot {
    double time = 0.0;
    std::vector<std::vector<int>> adjacency;  // sorted neighbor lists
    std::map<LinkKey, LinkSnapshot> links;
    std::vector<NodeTelemetry> nodes;

    const LinkSnapshot& link(int from, int to) const {
        auto it = links.find({from, to});
        if (it == links.end()) throw SimulationError("telemetry snapshot: unknown link");
        return it->second;
    }
    bool has_link(int from, int to) const { return links.count({from, to}) > 0; }
};

}  // namespace semnet
