// Synthetic concept-centroid generator. Stands in for the external embedding
// model: each task category owns a centroid and message vectors scatter
// around it, so same-task messages align with the task's concept set.
#pragma once

#include <cstdint>
#include <vector>

#include "semnet/semantics/knowledge_graph.hpp"
#include "semnet/semantics/semantic_vector.hpp"

namespace semnet {

struct GeneratorConfig {
    int dim = 128;
    int tasks = 5;
    int concepts_per_task_set = 3;  // task set = centroid + near variants
    int graph_nodes = 300;          // within the configured 200-500 range
    int graph_degree = 4;           // nearest-neighbor links per concept
    double concept_sigma = 0.10;    // concept scatter around its centroid
    double message_sigma = 0.15;    // message scatter around its centroid
    double task_set_sigma = 0.05;   // variant scatter inside a task set
};

class SyntheticSemantics {
public:
    SyntheticSemantics(const GeneratorConfig& cfg, Rng& semantics_stream);

    const KnowledgeGraph& graph() const { return graph_; }
    const std::vector<TaskConceptSet>& task_sets() const { return tasks_; }
    const TaskConceptSet& task_set(int task) const { return tasks_.at(task); }
    int task_count() const { return static_cast<int>(tasks_.size()); }

    SemanticVector sample_message(int task, Rng& semantics_stream) const;

    // Project every stored vector with the same matrix (dimension-reduction
    // robustness runs).
    void project(const RandomProjection& proj);

    // Swap in a drifted copy of the graph (declared drift event).
    void set_graph(KnowledgeGraph g) { graph_ = std::move(g); }

private:
    GeneratorConfig cfg_;
    std::vector<SemanticVector> centroids_;
    std::vector<TaskConceptSet> tasks_;
    KnowledgeGraph graph_;
};

}  // namespace semnet
