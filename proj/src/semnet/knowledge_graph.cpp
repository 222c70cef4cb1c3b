#include "semnet/semantics/knowledge_graph.hpp"

#include <algorithm>

#include "semnet/common.hpp"
#include "semnet/rng.hpp"

namespace semnet {

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::hierarchy: return "hierarchy";
        case Relation::dependency: return "dependency";
        case Relation::similarity: return "similarity";
        case Relation::association: return "association";
    }
    return "association";
}

Relation relation_from_name(const std::string& name) {
    if (name == "hierarchy") return Relation::hierarchy;
    if (name == "dependency") return Relation::dependency;
    if (name == "similarity") return Relation::similarity;
    if (name == "association") return Relation::association;
    throw ConfigError("unknown relation tag: " + name);
}

int KnowledgeGraph::index_of(int id) const {
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id,
                               [](const ConceptNode& n, int v) { return n.id < v; });
    if (it == nodes_.end() || it->id != id) return -1;
    return static_cast<int>(it - nodes_.begin());
}

void KnowledgeGraph::add_node(ConceptNode node) {
    if (node.id < 0) throw ConfigError("concept node id must be nonnegative");
    if (index_of(node.id) >= 0) throw ConfigError("duplicate concept node id");
    auto it = std::lower_bound(nodes_.begin(), nodes_.end(), node.id,
                               [](const ConceptNode& n, int v) { return n.id < v; });
    const auto pos = it - nodes_.begin();
    nodes_.insert(it, std::move(node));
    adjacency_.insert(adjacency_.begin() + pos, std::vector<int>{});
}

void KnowledgeGraph::add_edge(int a, int b, Relation relation) {
    if (a == b) throw ConfigError("knowledge graph: self-loop rejected");
    const int ia = index_of(a);
    const int ib = index_of(b);
    if (ia < 0 || ib < 0) throw ConfigError("knowledge graph: edge endpoint not found");
    auto& na = adjacency_[ia];
    if (std::binary_search(na.begin(), na.end(), b)) return;  // already linked
    na.insert(std::lower_bound(na.begin(), na.end(), b), b);
    auto& nb = adjacency_[ib];
    nb.insert(std::lower_bound(nb.begin(), nb.end(), a), a);
    edges_.push_back({std::min(a, b), std::max(a, b), relation});
}

const ConceptNode& KnowledgeGraph::node(int id) const {
    const int i = index_of(id);
    if (i < 0) throw ConfigError("knowledge graph: unknown node id");
    return nodes_[i];
}

bool KnowledgeGraph::has_node(int id) const { return index_of(id) >= 0; }

const std::vector<int>& KnowledgeGraph::neighbors(int id) const {
    const int i = index_of(id);
    if (i < 0) throw ConfigError("knowledge graph: unknown node id");
    return adjacency_[i];
}

double task_alignment(const SemanticVector& s, const TaskConceptSet& task) {
    if (task.concepts.empty()) throw ConfigError("task concept set is empty");
    double best = 0.0;
    for (const auto& t : task.concepts) best = std::max(best, cosine_similarity(s, t));
    return clamp01(best);
}

std::vector<int> map_to_concepts(const SemanticVector& s, const KnowledgeGraph& g, double tau) {
    if (g.empty()) throw ConfigError("map_to_concepts: empty knowledge graph");
    std::vector<int> mapped;
    int best_id = -1;
    double best_w = -1.0;
    for (const auto& n : g.nodes()) {
        const double w = clamp01(cosine_similarity(s, n.embedding));
        if (w >= tau) mapped.push_back(n.id);
        if (w > best_w) {
            best_w = w;
            best_id = n.id;
        }
    }
    if (mapped.empty()) mapped.push_back(best_id);
    return mapped;
}

double context_score(const SemanticVector& s, const KnowledgeGraph& g,
                     const std::vector<int>& mapped) {
    if (mapped.empty()) throw ConfigError("context_score: empty mapped set");
    std::vector<int> hood;
    for (int id : mapped) {
        const auto& ns = g.neighbors(id);
        hood.insert(hood.end(), ns.begin(), ns.end());
    }
    std::sort(hood.begin(), hood.end());
    hood.erase(std::unique(hood.begin(), hood.end()), hood.end());
    std::vector<int> mapped_sorted = mapped;
    std::sort(mapped_sorted.begin(), mapped_sorted.end());
    // Neighbors only: drop the mapped nodes themselves.
    std::vector<int> only;
    std::set_difference(hood.begin(), hood.end(), mapped_sorted.begin(), mapped_sorted.end(),
                        std::back_inserter(only));
    if (only.empty()) return 0.0;
    double sum = 0.0;
    for (int id : only) sum += clamp01(cosine_similarity(s, g.node(id).embedding));
    return sum / static_cast<double>(only.size());
}

KnowledgeGraph drift_concepts(const KnowledgeGraph& g, double fraction, double sigma,
                              std::uint64_t seed) {
    if (fraction < 0.0 || fraction > 1.0) throw ConfigError("drift fraction outside [0,1]");
    const std::size_t n = g.node_count();
    const auto count = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));

    Rng rng(seed);
    std::vector<int> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
    for (std::size_t i = n; i > 1; --i)
        std::swap(order[i - 1], order[rng.uniform_int(i)]);

    KnowledgeGraph out;
    std::vector<bool> hit(n, false);
    for (std::size_t i = 0; i < count; ++i) hit[order[i]] = true;
    // Perturbation draws happen in node order so the result is independent of
    // the shuffle's internal layout.
    std::size_t idx = 0;
    for (const auto& node : g.nodes()) {
        ConceptNode copy = node;
        if (hit[idx]) copy.embedding = perturb_embedding(node.embedding, sigma, rng);
        out.add_node(std::move(copy));
        ++idx;
    }
    for (const auto& e : g.edges()) out.add_edge(e.a, e.b, e.relation);
    return out;
}

}  // namespace semnet
