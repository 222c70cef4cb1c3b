// Network node layout and adjacency.
#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "semnet/common.hpp"

namespace semnet {

enum class NodeType { macro = 0, small_cell = 1, relay = 2, access_point = 3 };

const char* node_type_name(NodeType t);
NodeType node_type_from_name(const std::string& name);

struct NetNode {
    int id = -1;
    Eigen::Vector2d pos{0.0, 0.0};
    NodeType type = NodeType::access_point;
    bool mobile = false;
};

// Adjacency lists are kept sorted; node ids are dense 0..N-1. Construction
// rejects disconnected layouts, but links may be rewired afterwards as
// mobility plays out (partitions then surface as path breaks, not errors).
class Topology {
public:
    Topology() = default;
    Topology(std::vector<NetNode> nodes, const std::vector<std::pair<int, int>>& links,
             double area_m);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    const std::vector<NetNode>& nodes() const { return nodes_; }
    const NetNode& node(int id) const { return nodes_.at(id); }
    double area() const { return area_m_; }

    const std::vector<int>& neighbors(int id) const { return adjacency_.at(id); }
    const std::vector<std::vector<int>>& adjacency() const { return adjacency_; }
    bool has_link(int a, int b) const;
    std::vector<std::pair<int, int>> links() const;  // a < b, sorted

    void set_position(int id, const Eigen::Vector2d& pos) { nodes_.at(id).pos = pos; }
    void set_links(const std::vector<std::pair<int, int>>& links);

    bool connected() const;

private:
    std::vector<NetNode> nodes_;
    std::vector<std::vector<int>> adjacency_;
    double area_m_ = 1000.0;
};

}  // namespace semnet
