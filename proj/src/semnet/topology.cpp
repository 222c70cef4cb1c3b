#include "semnet/routing/topology.hpp"

#include <algorithm>
#include <deque>

namespace semnet {

const char* node_type_name(NodeType t) {
    switch (t) {
        case NodeType::macro: return "macro";
        case NodeType::small_cell: return "small_cell";
        case NodeType::relay: return "relay";
        case NodeType::access_point: return "access_point";
    }
    return "access_point";
}

NodeType node_type_from_name(const std::string& name) {
    if (name == "macro") return NodeType::macro;
    if (name == "small_cell") return NodeType::small_cell;
    if (name == "relay") return NodeType::relay;
    if (name == "access_point") return NodeType::access_point;
    throw ConfigError("unknown node type: " + name);
}

Topology::Topology(std::vector<NetNode> nodes, const std::vector<std::pair<int, int>>& links,
                   double area_m)
    : nodes_(std::move(nodes)), area_m_(area_m) {
    for (int i = 0; i < node_count(); ++i) {
        if (nodes_[i].id != i) throw ConfigError("topology: node ids must be dense 0..N-1");
        const auto& p = nodes_[i].pos;
        if (p.x() < 0.0 || p.x() > area_m_ || p.y() < 0.0 || p.y() > area_m_)
            throw ConfigError("topology: node position outside configured area");
    }
    set_links(links);
    if (!connected()) throw ConfigError("topology: disconnected layout rejected");
}

void Topology::set_links(const std::vector<std::pair<int, int>>& links) {
    adjacency_.assign(nodes_.size(), {});
    for (auto [a, b] : links) {
        if (a == b) throw ConfigError("topology: self-link rejected");
        if (a < 0 || b < 0 || a >= node_count() || b >= node_count())
            throw ConfigError("topology: link endpoint out of range");
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    for (auto& ns : adjacency_) {
        std::sort(ns.begin(), ns.end());
        ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    }
}

bool Topology::has_link(int a, int b) const {
    const auto& ns = adjacency_.at(a);
    return std::binary_search(ns.begin(), ns.end(), b);
}

std::vector<std::pair<int, int>> Topology::links() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < node_count(); ++a)
        for (int b : adjacency_[a])
            if (a < b) out.emplace_back(a, b);
    return out;
}

bool Topology::connected() const {
    if (nodes_.empty()) return false;
    std::vector<bool> seen(nodes_.size(), false);
    std::deque<int> frontier{0};
    seen[0] = true;
    int count = 1;
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop_front();
        for (int v : adjacency_[u]) {
            if (!seen[v]) {
                seen[v] = true;
                ++count;
                frontier.push_back(v);
            }
        }
    }
    return count == node_count();
}

}  // namespace semnet
