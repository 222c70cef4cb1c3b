#include "semnet/semantics/generator.hpp"

#include <algorithm>
#include <string>

#include "semnet/common.hpp"

namespace semnet {

namespace {

SemanticVector gaussian_unit(int dim, Rng& rng) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = rng.normal();
    return SemanticVector(v);
}

SemanticVector scatter(const SemanticVector& center, double sigma, Rng& rng) {
    return perturb_embedding(center, sigma, rng);
}

}  // namespace

SyntheticSemantics::SyntheticSemantics(const GeneratorConfig& cfg, Rng& rng) : cfg_(cfg) {
    if (cfg.tasks < 1) throw ConfigError("generator: need at least one task");
    if (cfg.graph_nodes < 2) throw ConfigError("generator: need at least two concepts");

    centroids_.reserve(cfg.tasks);
    for (int t = 0; t < cfg.tasks; ++t) centroids_.push_back(gaussian_unit(cfg.dim, rng));

    // Task concept sets: the centroid plus a few nearby variants.
    tasks_.reserve(cfg.tasks);
    for (int t = 0; t < cfg.tasks; ++t) {
        TaskConceptSet set;
        set.task_id = "task" + std::to_string(t);
        set.concepts.push_back(centroids_[t]);
        for (int i = 1; i < cfg.concepts_per_task_set; ++i)
            set.concepts.push_back(scatter(centroids_[t], cfg.task_set_sigma, rng));
        tasks_.push_back(std::move(set));
    }

    // Concept nodes scatter around the centroids, assigned round-robin so the
    // graph covers every task evenly.
    std::vector<int> owner(cfg.graph_nodes);
    for (int i = 0; i < cfg.graph_nodes; ++i) {
        const int task = i % cfg.tasks;
        owner[i] = task;
        ConceptNode node;
        node.id = i;
        node.label = "concept_" + std::to_string(task) + "_" + std::to_string(i);
        node.embedding = scatter(centroids_[task], cfg.concept_sigma, rng);
        graph_.add_node(std::move(node));
    }

    // Edges: each node links to its highest-affinity peers. Same-task links
    // carry similarity/hierarchy tags, cross-task links dependency/association.
    for (int i = 0; i < cfg.graph_nodes; ++i) {
        std::vector<std::pair<double, int>> ranked;
        ranked.reserve(cfg.graph_nodes - 1);
        for (int j = 0; j < cfg.graph_nodes; ++j) {
            if (j == i) continue;
            ranked.emplace_back(
                cosine_similarity(graph_.node(i).embedding, graph_.node(j).embedding), j);
        }
        const int deg = std::min<int>(cfg.graph_degree, static_cast<int>(ranked.size()));
        std::partial_sort(ranked.begin(), ranked.begin() + deg, ranked.end(),
                          [](const auto& a, const auto& b) {
                              if (a.first != b.first) return a.first > b.first;
                              return a.second < b.second;
                          });
        for (int k = 0; k < deg; ++k) {
            const int j = ranked[k].second;
            Relation rel;
            if (owner[i] == owner[j])
                rel = (k % 2 == 0) ? Relation::similarity : Relation::hierarchy;
            else
                rel = (k % 2 == 0) ? Relation::dependency : Relation::association;
            graph_.add_edge(i, j, rel);
        }
    }
}

SemanticVector SyntheticSemantics::sample_message(int task, Rng& rng) const {
    if (task < 0 || task >= static_cast<int>(centroids_.size()))
        throw ConfigError("sample_message: unknown task");
    return scatter(centroids_[task], cfg_.message_sigma, rng);
}

void SyntheticSemantics::project(const RandomProjection& proj) {
    if (proj.identity()) return;
    for (auto& c : centroids_) c = proj.apply(c);
    for (auto& set : tasks_)
        for (auto& v : set.concepts) v = proj.apply(v);
    KnowledgeGraph projected;
    for (const auto& n : graph_.nodes()) {
        ConceptNode copy = n;
        copy.embedding = proj.apply(n.embedding);
        projected.add_node(std::move(copy));
    }
    for (const auto& e : graph_.edges()) projected.add_edge(e.a, e.b, e.relation);
    graph_ = std::move(projected);
}

}  // namespace semnet
