#include "semnet/routing/candidates.hpp"

#include <algorithm>
#include <set>

namespace semnet {

namespace {

// Distance-to-dst BFS honoring banned nodes and banned directed edges, then a
// greedy walk from src that always takes the smallest admissible next hop.
// Returns the hop-count-shortest path that is lexicographically smallest from
// the front.
std::vector<int> masked_shortest(const std::vector<std::vector<int>>& adj, int src, int dst,
                                 const std::vector<bool>& banned_node,
                                 const std::set<std::pair<int, int>>& banned_edge) {
    const int n = static_cast<int>(adj.size());
    std::vector<int> dist(n, -1);
    std::vector<int> frontier{dst};
    if (banned_node[dst] || banned_node[src]) return {};
    dist[dst] = 0;
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int v : frontier) {
            for (int u : adj[v]) {
                if (banned_node[u] || dist[u] >= 0) continue;
                if (banned_edge.count({u, v})) continue;  // travel direction u -> v
                dist[u] = dist[v] + 1;
                next.push_back(u);
            }
        }
        frontier = std::move(next);
    }
    if (dist[src] < 0) return {};
    std::vector<int> path{src};
    int u = src;
    while (u != dst) {
        int pick = -1;
        for (int v : adj[u]) {
            if (banned_node[v] && v != dst) continue;
            if (banned_edge.count({u, v})) continue;
            if (dist[v] == dist[u] - 1) {
                pick = v;
                break;  // neighbors sorted: first admissible is smallest
            }
        }
        if (pick < 0) return {};
        path.push_back(pick);
        u = pick;
    }
    return path;
}

struct PathOrder {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

}  // namespace

std::vector<int> shortest_path(const std::vector<std::vector<int>>& adjacency, int src, int dst) {
    std::vector<bool> banned_node(adjacency.size(), false);
    return masked_shortest(adjacency, src, dst, banned_node, {});
}

std::vector<std::vector<int>> k_shortest_paths(const std::vector<std::vector<int>>& adjacency,
                                               int src, int dst, int k) {
    if (src == dst) throw ConfigError("k_shortest_paths: src equals dst");
    if (src < 0 || dst < 0 || src >= static_cast<int>(adjacency.size()) ||
        dst >= static_cast<int>(adjacency.size()))
        throw ConfigError("k_shortest_paths: endpoint out of range");
    if (k < 1) throw ConfigError("k_shortest_paths: k must be >= 1");

    std::vector<std::vector<int>> found;
    const auto first = shortest_path(adjacency, src, dst);
    if (first.empty()) return found;
    found.push_back(first);

    std::set<std::vector<int>, PathOrder> candidates;
    std::set<std::vector<int>> seen{first};

    while (static_cast<int>(found.size()) < k) {
        const auto& prev = found.back();
        for (std::size_t i = 0; i + 1 < prev.size(); ++i) {
            const int spur = prev[i];
            const std::vector<int> root(prev.begin(), prev.begin() + i + 1);

            std::set<std::pair<int, int>> banned_edge;
            for (const auto& p : found) {
                if (p.size() > i && std::equal(root.begin(), root.end(), p.begin()))
                    banned_edge.insert({p[i], p[i + 1]});
            }
            std::vector<bool> banned_node(adjacency.size(), false);
            for (std::size_t j = 0; j < i; ++j) banned_node[root[j]] = true;

            auto spur_path = masked_shortest(adjacency, spur, dst, banned_node, banned_edge);
            if (spur_path.empty()) continue;
            std::vector<int> total(root.begin(), root.end() - 1);
            total.insert(total.end(), spur_path.begin(), spur_path.end());
            if (!seen.count(total)) candidates.insert(std::move(total));
        }
        if (candidates.empty()) break;
        auto best = *candidates.begin();
        candidates.erase(candidates.begin());
        seen.insert(best);
        found.push_back(std::move(best));
    }
    return found;
}

}  // namespace semnet
