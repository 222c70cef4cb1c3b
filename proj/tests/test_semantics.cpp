#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "semnet/io.hpp"
#include "semnet/semantics/fidelity.hpp"
#include "semnet/semantics/generator.hpp"
#include "semnet/semantics/knowledge_graph.hpp"
#include "semnet/semantics/relevance.hpp"
#include "semnet/semantics/semantic_vector.hpp"

using namespace semnet;

namespace {

SemanticVector vec2(double x, double y) {
    Eigen::VectorXd v(2);
    v << x, y;
    return SemanticVector(v);
}

SemanticVector unit(int dim, int axis) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
    v[axis] = 1.0;
    return SemanticVector(v);
}

}  // namespace

TEST_CASE("cosine similarity on hand-evaluated pairs") {
    const auto a = vec2(0.6, 0.8);
    CHECK(cosine_similarity(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cosine_similarity(vec2(1, 0), vec2(0, 1)) == doctest::Approx(0.0).epsilon(1e-12));
    // 0.6*1 + 0.8*0 with both inputs already unit-norm
    CHECK(cosine_similarity(a, vec2(1, 0)) == doctest::Approx(0.6).epsilon(1e-9));
    CHECK_THROWS_AS(cosine_similarity(a, unit(3, 0)), ConfigError);
}

TEST_CASE("semantic vectors normalize at construction") {
    Eigen::VectorXd raw(3);
    raw << 3.0, 4.0, 0.0;
    const SemanticVector s(raw);
    CHECK(s.values().norm() == doctest::Approx(1.0).epsilon(1e-9));
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
    CHECK_THROWS_AS(SemanticVector{zero}, DomainError);
}

TEST_CASE("task alignment: max rule with clamped negatives") {
    TaskConceptSet task{"t", {vec2(1, 0), vec2(0, 1)}};
    CHECK(task_alignment(vec2(1, 0), task) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(task_alignment(vec2(0.6, 0.8), task) == doctest::Approx(0.8).epsilon(1e-9));
    TaskConceptSet neg{"t", {vec2(-1, 0)}};
    CHECK(task_alignment(vec2(1, 0), neg) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(task_alignment(vec2(1, 0), TaskConceptSet{"e", {}}), ConfigError);
}

TEST_CASE("task alignment invariant under positive rescaling and permutation") {
    Eigen::VectorXd raw(4);
    raw << 0.2, -0.5, 0.7, 0.1;
    TaskConceptSet task{"t", {unit(4, 0), unit(4, 2), unit(4, 3)}};
    const double a1 = task_alignment(SemanticVector(raw), task);
    const double a2 = task_alignment(SemanticVector(3.7 * raw), task);
    CHECK(a1 == doctest::Approx(a2).epsilon(1e-12));
    TaskConceptSet shuffled{"t", {task.concepts[2], task.concepts[0], task.concepts[1]}};
    CHECK(task_alignment(SemanticVector(raw), shuffled) == doctest::Approx(a1).epsilon(1e-12));
}

TEST_CASE("smooth degradation when task concepts go missing") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        Eigen::VectorXd raw(8);
        for (int i = 0; i < 8; ++i) raw[i] = rng.normal();
        const SemanticVector s(raw);
        TaskConceptSet task{"t", {}};
        for (int i = 0; i < 4; ++i) {
            Eigen::VectorXd c(8);
            for (int j = 0; j < 8; ++j) c[j] = rng.normal();
            task.concepts.push_back(SemanticVector(c));
        }
        std::vector<double> sims;
        for (const auto& c : task.concepts) sims.push_back(clamp01(cosine_similarity(s, c)));
        std::vector<double> sorted = sims;
        std::sort(sorted.rbegin(), sorted.rend());
        const double full = task_alignment(s, task);

        for (std::size_t drop = 0; drop < task.concepts.size(); ++drop) {
            TaskConceptSet reduced{"t", {}};
            for (std::size_t i = 0; i < task.concepts.size(); ++i)
                if (i != drop) reduced.concepts.push_back(task.concepts[i]);
            const double degraded = task_alignment(s, reduced);
            if (sims[drop] < sorted[0]) {
                CHECK(degraded == doctest::Approx(full).epsilon(1e-12));
            } else {
                CHECK(full - degraded <= sorted[0] - sorted[1] + 1e-12);
            }
        }
    }
}

TEST_CASE("map_to_concepts threshold and argmax fallback") {
    KnowledgeGraph g;
    // Affinities to s=[1,0(,0)]: 0.9, 0.75, 0.2 by construction.
    const double a0 = 0.9, a1 = 0.75, a2 = 0.2;
    Eigen::VectorXd v0(2), v1(2), v2(2);
    v0 << a0, std::sqrt(1 - a0 * a0);
    v1 << a1, std::sqrt(1 - a1 * a1);
    v2 << a2, std::sqrt(1 - a2 * a2);
    g.add_node({0, "n0", SemanticVector(v0)});
    g.add_node({1, "n1", SemanticVector(v1)});
    g.add_node({2, "n2", SemanticVector(v2)});
    const auto s = vec2(1, 0);

    CHECK(map_to_concepts(s, g, 0.7) == std::vector<int>{0, 1});
    CHECK(map_to_concepts(s, g, 0.95) == std::vector<int>{0});  // fallback to argmax
    KnowledgeGraph single;
    single.add_node({0, "x", s});
    CHECK(map_to_concepts(s, single, 0.7) == std::vector<int>{0});
}

TEST_CASE("context score averages neighbor affinities") {
    const auto s = vec2(1, 0);
    KnowledgeGraph g;
    g.add_node({0, "mapped", s});
    SUBCASE("isolated mapped node scores zero") {
        CHECK(context_score(s, g, {0}) == doctest::Approx(0.0));
    }
    SUBCASE("single identical neighbor scores one") {
        g.add_node({1, "same", s});
        g.add_edge(0, 1, Relation::similarity);
        CHECK(context_score(s, g, {0}) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("two neighbors mean 0.6") {
        g.add_node({1, "n1", vec2(0.4, std::sqrt(1 - 0.16))});
        g.add_node({2, "n2", vec2(0.8, 0.6)});
        g.add_edge(0, 1, Relation::association);
        g.add_edge(0, 2, Relation::dependency);
        CHECK(context_score(s, g, {0}) == doctest::Approx(0.6).epsilon(1e-9));
    }
    SUBCASE("invariant to mapped ordering") {
        g.add_node({1, "n1", vec2(0.4, std::sqrt(1 - 0.16))});
        g.add_node({2, "n2", vec2(0.8, 0.6)});
        g.add_node({3, "m2", vec2(0, 1)});
        g.add_edge(0, 1, Relation::association);
        g.add_edge(3, 2, Relation::dependency);
        CHECK(context_score(s, g, {0, 3}) == doctest::Approx(context_score(s, g, {3, 0})));
    }
}

TEST_CASE("knowledge graph rejects self-loops and dangling edges") {
    KnowledgeGraph g;
    g.add_node({0, "a", vec2(1, 0)});
    CHECK_THROWS_AS(g.add_edge(0, 0, Relation::similarity), ConfigError);
    CHECK_THROWS_AS(g.add_edge(0, 5, Relation::similarity), ConfigError);
}

TEST_CASE("urgency: convex combination over worsening components") {
    NetworkStateVector best;  // all zero, link quality 1
    CHECK(urgency(best) == doctest::Approx(0.0));
    NetworkStateVector worst{1, 1, 1, 1, 1, 0};
    CHECK(urgency(worst) == doctest::Approx(1.0).epsilon(1e-12));
    NetworkStateVector d;
    d.delay = 0.4;
    CHECK(urgency(d) == doctest::Approx(0.10).epsilon(1e-9));  // 0.25 * 0.4
    NetworkStateVector bad;
    bad.delay = 1.5;
    CHECK_THROWS_AS(urgency(bad), ValidationError);
}

TEST_CASE("relevance fusion") {
    CHECK(fuse_relevance(1, 1, 1, {}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fuse_relevance(1, 0, 0, {}) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(fuse_relevance(0, 0, 0, {}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(fuse_relevance(1, 1, 1, FusionWeights{0.5, 0.4, 0.3}), ConfigError);
}

TEST_CASE("relevance monotonicity in each fused component") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const double s = rng.uniform(), c = rng.uniform(), u = rng.uniform();
        const double bump = rng.uniform(0.0, 1.0 - std::max({s, c, u}));
        const double base = fuse_relevance(s, c, u, {});
        CHECK(fuse_relevance(std::min(1.0, s + bump), c, u, {}) >= base - 1e-12);
        CHECK(fuse_relevance(s, std::min(1.0, c + bump), u, {}) >= base - 1e-12);
        CHECK(fuse_relevance(s, c, std::min(1.0, u + bump), {}) >= base - 1e-12);
    }
}

TEST_CASE("z-normalization over the sliding window") {
    SUBCASE("empty window convention") {
        RelevanceStats stats;
        CHECK(z_normalize(0.7, stats) == doctest::Approx(0.0));
        CHECK(stats.size() == 1);
    }
    SUBCASE("centered input scores zero, and the derived example") {
        RelevanceStats stats;
        stats.push(0.4);
        stats.push(0.6);  // mu = 0.5, sigma = 0.1
        CHECK(stats.mean() == doctest::Approx(0.5));
        CHECK(stats.stddev() == doctest::Approx(0.1).epsilon(1e-12));
        RelevanceStats copy = stats;
        CHECK(z_normalize(0.5, copy) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(z_normalize(0.65, stats) == doctest::Approx(1.5).epsilon(1e-9));
    }
    SUBCASE("sigma floor prevents division blowup") {
        RelevanceStats stats(200, 1e-6);
        for (int i = 0; i < 10; ++i) stats.push(0.5);
        CHECK(stats.stddev() == doctest::Approx(1e-6));
        CHECK(std::isfinite(z_normalize(0.500001, stats)));
    }
    SUBCASE("window keeps exactly W most recent values") {
        RelevanceStats stats(4);
        for (double v : {1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0}) stats.push(v);
        CHECK(stats.size() == 4);
        CHECK(stats.mean() == doctest::Approx(0.0));
    }
    SUBCASE("classification of the window mean is medium whenever sigma > 0") {
        Rng rng(3);
        RelevanceStats stats;
        for (int i = 0; i < 50; ++i) stats.push(rng.uniform());
        const double mu = stats.mean();
        CHECK(classify(z_normalize(mu, stats)) == ImportanceClass::medium);
    }
}

TEST_CASE("class boundaries exactly as the piecewise rule states") {
    const double eps = 1e-9;
    CHECK(classify(-1.0 - eps) == ImportanceClass::low);
    CHECK(classify(-1.0) == ImportanceClass::medium);
    CHECK(classify(0.0) == ImportanceClass::medium);
    CHECK(classify(1.0) == ImportanceClass::medium);
    CHECK(classify(1.0 + eps) == ImportanceClass::high);
    CHECK(classify(1.5) == ImportanceClass::high);
    CHECK(classify(-2.0) == ImportanceClass::low);
}

TEST_CASE("fidelity selection by utility") {
    // Constants from the selection rule's worked examples.
    const FidelitySet levels({FidelityId::low, 0.5, 0.2, 0.08},
                             {FidelityId::mid, 0.8, 0.5, 0.04},
                             {FidelityId::high, 1.0, 1.0, 0.01});
    const double omega = 0.3;
    CHECK(select_fidelity(0.0, levels, omega) == FidelityId::low);
    CHECK(fidelity_utility(1.0, levels.at(FidelityId::low), omega) == doctest::Approx(0.44));
    CHECK(fidelity_utility(1.0, levels.at(FidelityId::mid), omega) == doctest::Approx(0.65));
    CHECK(fidelity_utility(1.0, levels.at(FidelityId::high), omega) == doctest::Approx(0.70));
    CHECK(select_fidelity(1.0, levels, omega) == FidelityId::high);
    CHECK(fidelity_utility(0.5, levels.at(FidelityId::low), omega) == doctest::Approx(0.19));
    CHECK(fidelity_utility(0.5, levels.at(FidelityId::mid), omega) == doctest::Approx(0.25));
    CHECK(fidelity_utility(0.5, levels.at(FidelityId::high), omega) == doctest::Approx(0.20));
    CHECK(select_fidelity(0.5, levels, omega) == FidelityId::mid);
}

TEST_CASE("fidelity selection is nondecreasing in relevance") {
    const auto levels = FidelitySet::defaults();
    int prev = 0;
    for (int i = 0; i <= 100; ++i) {
        const int cur = static_cast<int>(select_fidelity(i / 100.0, levels, 0.3));
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("fidelity set ordering is enforced") {
    CHECK_THROWS_AS(FidelitySet({FidelityId::low, 0.9, 0.2, 0.08},
                                {FidelityId::mid, 0.8, 0.5, 0.04},
                                {FidelityId::high, 1.0, 1.0, 0.01}),
                    ConfigError);
}

TEST_CASE("embedding perturbation") {
    Rng rng(42);
    Eigen::VectorXd raw(128);
    for (int i = 0; i < 128; ++i) raw[i] = rng.normal();
    const SemanticVector s(raw);

    SUBCASE("zero noise returns the identical vector") {
        Rng stream(1);
        const auto out = perturb_embedding(s, 0.0, stream);
        CHECK((out.values() - s.values()).norm() == 0.0);
    }
    SUBCASE("fixed seed reproduces") {
        Rng s1(9), s2(9);
        const auto a = perturb_embedding(s, 0.1, s1);
        const auto b = perturb_embedding(s, 0.1, s2);
        CHECK((a.values() - b.values()).norm() == 0.0);
    }
    SUBCASE("mean cosine distance grows with sigma (Monte Carlo)") {
        double prev = 0.0;
        for (double sigma : {0.02, 0.05, 0.1, 0.2}) {
            Rng stream(77);
            double dist = 0.0;
            for (int i = 0; i < 1000; ++i)
                dist += 1.0 - cosine_similarity(s, perturb_embedding(s, sigma, stream));
            dist /= 1000.0;
            CHECK(dist > prev);
            prev = dist;
        }
    }
}

TEST_CASE("random projection") {
    Rng rng(5);
    SUBCASE("identity mode leaves vectors unchanged") {
        const RandomProjection proj(8, 8, 123);
        Eigen::VectorXd raw(8);
        for (int i = 0; i < 8; ++i) raw[i] = rng.normal();
        const SemanticVector s(raw);
        CHECK((reduce_dimension(s, proj).values() - s.values()).norm() == 0.0);
    }
    SUBCASE("deterministic for identical inputs") {
        const RandomProjection proj(16, 8, 99);
        Eigen::VectorXd raw(16);
        for (int i = 0; i < 16; ++i) raw[i] = rng.normal();
        const SemanticVector s(raw);
        const auto a = proj.apply(s);
        const auto b = proj.apply(SemanticVector(raw));
        CHECK((a.values() - b.values()).norm() == 0.0);
    }
    SUBCASE("128 to 64 roughly preserves pairwise similarity ordering") {
        const RandomProjection proj(128, 64, 2024);
        std::vector<SemanticVector> pre, post;
        for (int i = 0; i < 40; ++i) {
            Eigen::VectorXd raw(128);
            for (int j = 0; j < 128; ++j) raw[j] = rng.normal();
            pre.emplace_back(raw);
            post.push_back(proj.apply(pre.back()));
        }
        // Pearson correlation over 100 random pairs.
        std::vector<double> x, y;
        Rng pick(4);
        for (int i = 0; i < 100; ++i) {
            const int a = static_cast<int>(pick.uniform_int(40));
            int b = static_cast<int>(pick.uniform_int(40));
            if (a == b) b = (b + 1) % 40;
            x.push_back(cosine_similarity(pre[a], pre[b]));
            y.push_back(cosine_similarity(post[a], post[b]));
        }
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            mx += x[i];
            my += y[i];
        }
        mx /= x.size();
        my /= y.size();
        double sxy = 0, sxx = 0, syy = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            sxy += (x[i] - mx) * (y[i] - my);
            sxx += (x[i] - mx) * (x[i] - mx);
            syy += (y[i] - my) * (y[i] - my);
        }
        CHECK(sxy / std::sqrt(sxx * syy) > 0.3);
    }
    SUBCASE("target above source dim rejected") {
        CHECK_THROWS_AS(RandomProjection(8, 16, 1), ConfigError);
    }
}

TEST_CASE("concept drift") {
    GeneratorConfig cfg;
    cfg.dim = 32;
    cfg.tasks = 4;
    cfg.graph_nodes = 200;
    cfg.graph_degree = 3;
    Rng stream(31);
    const SyntheticSemantics sem(cfg, stream);
    const auto& g = sem.graph();

    SUBCASE("fraction zero is an identical copy") {
        const auto g2 = drift_concepts(g, 0.0, 0.2, 17);
        for (std::size_t i = 0; i < g.node_count(); ++i)
            CHECK((g.nodes()[i].embedding.values() - g2.nodes()[i].embedding.values()).norm() ==
                  0.0);
    }
    SUBCASE("zero-magnitude perturbation is identical") {
        const auto g2 = drift_concepts(g, 1.0, 0.0, 17);
        for (std::size_t i = 0; i < g.node_count(); ++i)
            CHECK((g.nodes()[i].embedding.values() - g2.nodes()[i].embedding.values()).norm() ==
                  0.0);
    }
    SUBCASE("fraction 0.1 of 200 nodes perturbs exactly 20") {
        const auto g2 = drift_concepts(g, 0.1, 0.2, 17);
        int changed = 0;
        for (std::size_t i = 0; i < g.node_count(); ++i)
            if ((g.nodes()[i].embedding.values() - g2.nodes()[i].embedding.values()).norm() > 0)
                ++changed;
        CHECK(changed == 20);
        CHECK(g2.edges().size() == g.edges().size());
    }
}

TEST_CASE("synthetic generator grounds same-task alignment") {
    GeneratorConfig cfg;
    cfg.dim = 128;
    cfg.tasks = 5;
    cfg.graph_nodes = 200;
    Rng stream(8);
    const SyntheticSemantics sem(cfg, stream);
    Rng msgs(9);
    for (int t = 0; t < cfg.tasks; ++t) {
        const auto m = sem.sample_message(t, msgs);
        const double own = task_alignment(m, sem.task_set(t));
        for (int o = 0; o < cfg.tasks; ++o) {
            if (o == t) continue;
            CHECK(own > task_alignment(m, sem.task_set(o)));
        }
    }
}

TEST_CASE("graph and task set files round-trip") {
    GeneratorConfig cfg;
    cfg.dim = 16;
    cfg.tasks = 3;
    cfg.graph_nodes = 30;
    cfg.graph_degree = 2;
    Rng stream(12);
    const SyntheticSemantics sem(cfg, stream);

    const auto dir = std::filesystem::temp_directory_path() / "semnet_io_test";
    std::filesystem::create_directories(dir);
    const auto gpath = (dir / "graph.txt").string();
    const auto tpath = (dir / "tasks.txt").string();

    save_knowledge_graph(sem.graph(), gpath);
    const auto g2 = load_knowledge_graph(gpath);
    REQUIRE(g2.node_count() == sem.graph().node_count());
    CHECK(g2.edges().size() == sem.graph().edges().size());
    for (std::size_t i = 0; i < g2.node_count(); ++i) {
        CHECK(g2.nodes()[i].id == sem.graph().nodes()[i].id);
        CHECK((g2.nodes()[i].embedding.values() - sem.graph().nodes()[i].embedding.values())
                  .norm() < 1e-12);
    }

    save_task_sets(sem.task_sets(), tpath);
    const auto tasks2 = load_task_sets(tpath);
    REQUIRE(tasks2.size() == sem.task_sets().size());
    for (std::size_t i = 0; i < tasks2.size(); ++i) {
        CHECK(tasks2[i].task_id == sem.task_sets()[i].task_id);
        REQUIRE(tasks2[i].concepts.size() == sem.task_sets()[i].concepts.size());
    }
    std::filesystem::remove_all(dir);
}
