#include "semnet/io.hpp"

#include <array>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace semnet {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open for reading: " + path);
    return in;
}

bool next_record(std::ifstream& in, std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        tokens.clear();
        std::string tok;
        while (ss >> tok) tokens.push_back(tok);
        if (!tokens.empty()) return true;
    }
    return false;
}

Eigen::VectorXd parse_vector(const std::vector<std::string>& tokens, std::size_t from) {
    if (tokens.size() <= from) throw ConfigError("record missing embedding values");
    Eigen::VectorXd v(tokens.size() - from);
    for (std::size_t i = from; i < tokens.size(); ++i) v[i - from] = std::stod(tokens[i]);
    return v;
}

}  // namespace

void save_knowledge_graph(const KnowledgeGraph& g, const std::string& path) {
    auto out = open_out(path);
    for (const auto& n : g.nodes()) {
        out << "node " << n.id << ' ' << n.label;
        for (int i = 0; i < n.embedding.dim(); ++i) out << ' ' << fmt_double(n.embedding.values()[i]);
        out << '\n';
    }
    for (const auto& e : g.edges())
        out << "edge " << e.a << ' ' << e.b << ' ' << relation_name(e.relation) << '\n';
}

KnowledgeGraph load_knowledge_graph(const std::string& path) {
    auto in = open_in(path);
    KnowledgeGraph g;
    std::vector<std::string> t;
    std::vector<std::array<std::string, 3>> edges;
    while (next_record(in, t)) {
        if (t[0] == "node") {
            if (t.size() < 4) throw ConfigError("graph node record too short");
            ConceptNode n;
            n.id = std::stoi(t[1]);
            n.label = t[2];
            n.embedding = SemanticVector(parse_vector(t, 3));
            g.add_node(std::move(n));
        } else if (t[0] == "edge") {
            if (t.size() != 4) throw ConfigError("graph edge record malformed");
            edges.push_back({t[1], t[2], t[3]});
        } else {
            throw ConfigError("unexpected record in knowledge graph file: " + t[0]);
        }
    }
    for (const auto& e : edges)
        g.add_edge(std::stoi(e[0]), std::stoi(e[1]), relation_from_name(e[2]));
    if (g.empty()) throw ConfigError("knowledge graph file contains no nodes");
    return g;
}

void save_task_sets(const std::vector<TaskConceptSet>& tasks, const std::string& path) {
    auto out = open_out(path);
    for (const auto& task : tasks) {
        out << "task " << task.task_id << '\n';
        for (const auto& c : task.concepts) {
            out << "concept " << task.task_id;
            for (int i = 0; i < c.dim(); ++i) out << ' ' << fmt_double(c.values()[i]);
            out << '\n';
        }
    }
}

std::vector<TaskConceptSet> load_task_sets(const std::string& path) {
    auto in = open_in(path);
    std::vector<TaskConceptSet> tasks;
    std::map<std::string, std::size_t> index;
    std::vector<std::string> t;
    while (next_record(in, t)) {
        if (t[0] == "task") {
            if (t.size() != 2) throw ConfigError("task record malformed");
            if (!index.count(t[1])) {
                index[t[1]] = tasks.size();
                tasks.push_back({t[1], {}});
            }
        } else if (t[0] == "concept") {
            if (t.size() < 3) throw ConfigError("concept record too short");
            auto it = index.find(t[1]);
            if (it == index.end()) throw ConfigError("concept references unknown task: " + t[1]);
            tasks[it->second].concepts.push_back(SemanticVector(parse_vector(t, 2)));
        } else {
            throw ConfigError("unexpected record in task set file: " + t[0]);
        }
    }
    for (const auto& task : tasks)
        if (task.concepts.empty())
            throw ConfigError("task concept set is empty: " + task.task_id);
    return tasks;
}

void save_topology(const Topology& topo, const std::string& path) {
    auto out = open_out(path);
    for (const auto& n : topo.nodes())
        out << "netnode " << n.id << ' ' << node_type_name(n.type) << ' ' << fmt_double(n.pos.x())
            << ' ' << fmt_double(n.pos.y()) << ' ' << (n.mobile ? 1 : 0) << '\n';
    for (auto [a, b] : topo.links()) out << "link " << a << ' ' << b << '\n';
}

Topology load_topology(const std::string& path, double area_m) {
    auto in = open_in(path);
    std::vector<NetNode> nodes;
    std::vector<std::pair<int, int>> links;
    std::vector<std::string> t;
    while (next_record(in, t)) {
        if (t[0] == "netnode") {
            if (t.size() != 6) throw ConfigError("netnode record malformed");
            NetNode n;
            n.id = std::stoi(t[1]);
            n.type = node_type_from_name(t[2]);
            n.pos = {std::stod(t[3]), std::stod(t[4])};
            n.mobile = std::stoi(t[5]) != 0;
            nodes.push_back(n);
        } else if (t[0] == "link") {
            if (t.size() != 3) throw ConfigError("link record malformed");
            links.emplace_back(std::stoi(t[1]), std::stoi(t[2]));
        } else {
            throw ConfigError("unexpected record in topology file: " + t[0]);
        }
    }
    return Topology(std::move(nodes), links, area_m);
}

}  // namespace semnet
