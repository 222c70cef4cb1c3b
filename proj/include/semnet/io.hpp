// Line-record text format shared by knowledge graphs, task concept sets, and
// topologies, so fixtures and generated artifacts are interchangeable.
//
//   node <id> <label> <v0> <v1> ...          (knowledge graph)
//   edge <a> <b> <relation>
//   task <task_id>
//   concept <task_id> <v0> <v1> ...
//   netnode <id> <type> <x> <y> <mobile01>   (topology)
//   link <a> <b>
//
// '#' starts a comment; blank lines are ignored.
#pragma once

#include <string>
#include <vector>

#include "semnet/routing/topology.hpp"
#include "semnet/semantics/knowledge_graph.hpp"

namespace semnet {

void save_knowledge_graph(const KnowledgeGraph& g, const std::string& path);
KnowledgeGraph load_knowledge_graph(const std::string& path);

void save_task_sets(const std::vector<TaskConceptSet>& tasks, const std::string& path);
std::vector<TaskConceptSet> load_task_sets(const std::string& path);

void save_topology(const Topology& topo, const std::string& path);
Topology load_topology(const std::string& path, double area_m);

}  // namespace semnet
