// Bounded candidate path generation: Yen-style k-shortest loop-free paths by
// hop count with lexicographic tie-breaking for determinism.
#pragma once

#include <vector>

#include "semnet/routing/telemetry.hpp"

namespace semnet {

struct CandidatePath {
    std::vector<int> hops;                  // source ... destination
    double delay_s = 0.0;                   // d(p)
    double load = 0.0;                      // l(p), bottleneck convention
    std::vector<double> link_impairments;   // per-link d_link for the predictor
    double predicted_distortion = 0.0;      // D-hat at the evaluated fidelity
};

// Hop-count shortest path from src to dst, lexicographically smallest among
// equals. Empty when unreachable.
std::vector<int> shortest_path(const std::vector<std::vector<int>>& adjacency, int src, int dst);

// Up to k loop-free shortest paths ordered by (hop count, lexicographic).
// With k large enough this enumerates every simple path.
std::vector<std::vector<int>> k_shortest_paths(const std::vector<std::vector<int>>& adjacency,
                                               int src, int dst, int k);

}  // namespace semnet
