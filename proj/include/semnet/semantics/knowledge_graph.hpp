// Concept graph grounding contextual relevance, plus the task concept sets.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "semnet/semantics/semantic_vector.hpp"

namespace semnet {

enum class Relation { hierarchy, dependency, similarity, association };

const char* relation_name(Relation r);
Relation relation_from_name(const std::string& name);

struct ConceptNode {
    int id = -1;
    std::string label;
    SemanticVector embedding;
};

struct ConceptEdge {
    int a = -1;
    int b = -1;
    Relation relation = Relation::association;
};

// Static during a run; drift experiments build a perturbed copy up front and
// swap it in at the declared drift event.
class KnowledgeGraph {
public:
    void add_node(ConceptNode node);
    void add_edge(int a, int b, Relation relation);

    bool empty() const { return nodes_.empty(); }
    std::size_t node_count() const { return nodes_.size(); }
    const std::vector<ConceptNode>& nodes() const { return nodes_; }
    const std::vector<ConceptEdge>& edges() const { return edges_; }

    const ConceptNode& node(int id) const;
    bool has_node(int id) const;
    // Direct neighbors, sorted by id.
    const std::vector<int>& neighbors(int id) const;

private:
    std::vector<ConceptNode> nodes_;           // sorted by id
    std::vector<ConceptEdge> edges_;
    std::vector<std::vector<int>> adjacency_;  // parallel to nodes_
    int index_of(int id) const;
};

struct TaskConceptSet {
    std::string task_id;
    std::vector<SemanticVector> concepts;
};

// Max cosine similarity over the task's concepts, negatives clamped to zero.
double task_alignment(const SemanticVector& s, const TaskConceptSet& task);

// Node ids whose clamped affinity reaches tau; falls back to the single
// best-affinity node when none qualify. Result sorted by id.
std::vector<int> map_to_concepts(const SemanticVector& s, const KnowledgeGraph& g, double tau);

// Mean clamped affinity over the union of the mapped nodes' direct neighbors,
// mapped nodes themselves excluded. Empty neighborhood scores zero.
double context_score(const SemanticVector& s, const KnowledgeGraph& g,
                     const std::vector<int>& mapped);

// Copy of g with ceil(fraction * nodes) randomly chosen embeddings
// Gaussian-perturbed and renormalized; edges unchanged.
KnowledgeGraph drift_concepts(const KnowledgeGraph& g, double fraction, double sigma,
                              std::uint64_t seed);

}  // namespace semnet
