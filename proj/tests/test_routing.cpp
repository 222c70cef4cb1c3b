#include <algorithm>
#include <deque>
#include <set>

#include "doctest.h"
#include "semnet/rng.hpp"
#include "semnet/routing/candidates.hpp"
#include "semnet/routing/costs.hpp"
#include "semnet/routing/topology.hpp"

using namespace semnet;

namespace {

std::vector<std::vector<int>> adjacency_from(int n, const std::vector<std::pair<int, int>>& links) {
    std::vector<std::vector<int>> adj(n);
    for (auto [a, b] : links) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (auto& v : adj) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return adj;
}

// Independent oracle: plain BFS shortest path by hop count.
std::vector<int> bfs_oracle(const std::vector<std::vector<int>>& adj, int src, int dst) {
    std::vector<int> parent(adj.size(), -2);
    std::deque<int> q{src};
    parent[src] = -1;
    while (!q.empty()) {
        const int u = q.front();
        q.pop_front();
        if (u == dst) break;
        for (int v : adj[u]) {
            if (parent[v] == -2) {
                parent[v] = u;
                q.push_back(v);
            }
        }
    }
    if (parent[dst] == -2) return {};
    std::vector<int> path;
    for (int u = dst; u != -1; u = parent[u]) path.push_back(u);
    std::reverse(path.begin(), path.end());
    return path;
}

// Independent oracle: every simple path via DFS enumeration.
void dfs_paths(const std::vector<std::vector<int>>& adj, int u, int dst, std::vector<int>& cur,
               std::vector<bool>& seen, std::vector<std::vector<int>>& out) {
    if (u == dst) {
        out.push_back(cur);
        return;
    }
    for (int v : adj[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        cur.push_back(v);
        dfs_paths(adj, v, dst, cur, seen, out);
        cur.pop_back();
        seen[v] = false;
    }
}

std::vector<std::vector<int>> all_simple_paths(const std::vector<std::vector<int>>& adj, int src,
                                               int dst) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur{src};
    std::vector<bool> seen(adj.size(), false);
    seen[src] = true;
    dfs_paths(adj, src, dst, cur, seen, out);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

TelemetrySnapshot uniform_snapshot(const std::vector<std::vector<int>>& adj, double prop = 0.001,
                                   double cap = 1e8) {
    TelemetrySnapshot snap;
    snap.adjacency = adj;
    snap.nodes.resize(adj.size());
    for (int u = 0; u < static_cast<int>(adj.size()); ++u)
        for (int v : adj[u]) snap.links[{u, v}] = LinkSnapshot{prop, cap, 0.0, 0.0, 1.0, 0.0};
    return snap;
}

}  // namespace

TEST_CASE("candidate generation on small graphs") {
    SUBCASE("line graph has exactly one path") {
        const auto adj = adjacency_from(3, {{0, 1}, {1, 2}});
        const auto paths = k_shortest_paths(adj, 0, 2, 4);
        REQUIRE(paths.size() == 1);
        CHECK(paths[0] == std::vector<int>{0, 1, 2});
    }
    SUBCASE("diamond yields both two-hop paths in lexicographic order") {
        const auto adj = adjacency_from(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
        const auto paths = k_shortest_paths(adj, 0, 3, 2);
        const auto oracle = all_simple_paths(adj, 0, 3);
        REQUIRE(paths.size() == 2);
        CHECK(paths[0] == oracle[0]);
        CHECK(paths[1] == oracle[1]);
    }
    SUBCASE("k=1 equals the BFS shortest path") {
        Rng rng(99);
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 4 + static_cast<int>(rng.uniform_int(5));
            std::vector<std::pair<int, int>> links;
            for (int i = 1; i < n; ++i)
                links.emplace_back(static_cast<int>(rng.uniform_int(i)), i);  // spanning tree
            for (int e = 0; e < n; ++e) {
                const int a = static_cast<int>(rng.uniform_int(n));
                const int b = static_cast<int>(rng.uniform_int(n));
                if (a != b) links.emplace_back(std::min(a, b), std::max(a, b));
            }
            const auto adj = adjacency_from(n, links);
            const auto got = k_shortest_paths(adj, 0, n - 1, 1);
            const auto want = bfs_oracle(adj, 0, n - 1);
            REQUIRE(got.size() == 1);
            CHECK(got[0].size() == want.size());
        }
    }
    SUBCASE("no path yields empty list") {
        std::vector<std::vector<int>> adj(4);
        adj[0] = {1};
        adj[1] = {0};
        adj[2] = {3};
        adj[3] = {2};
        CHECK(k_shortest_paths(adj, 0, 3, 4).empty());
    }
    SUBCASE("unbounded k enumerates exactly the simple paths, in order") {
        Rng rng(123);
        for (int trial = 0; trial < 60; ++trial) {
            const int n = 4 + static_cast<int>(rng.uniform_int(4));
            std::vector<std::pair<int, int>> links;
            for (int i = 1; i < n; ++i)
                links.emplace_back(static_cast<int>(rng.uniform_int(i)), i);
            for (int e = 0; e < n + 2; ++e) {
                const int a = static_cast<int>(rng.uniform_int(n));
                const int b = static_cast<int>(rng.uniform_int(n));
                if (a != b) links.emplace_back(std::min(a, b), std::max(a, b));
            }
            const auto adj = adjacency_from(n, links);
            const auto oracle = all_simple_paths(adj, 0, n - 1);
            const auto got = k_shortest_paths(adj, 0, n - 1, 10000);
            REQUIRE(got.size() == oracle.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(got[i].size() == oracle[i].size());
                CHECK(got[i] == oracle[i]);
            }
        }
    }
}

TEST_CASE("path metric aggregation") {
    const auto adj = adjacency_from(3, {{0, 1}, {1, 2}});
    auto snap = uniform_snapshot(adj);
    const DistortionModel model;

    SUBCASE("idle two-hop path: propagation plus transmission") {
        CandidatePath p{{0, 1, 2}};
        aggregate_path_metrics(p, snap, 1024, model);
        const double tx = 1024.0 * 8.0 / 1e8;
        CHECK(p.delay_s == doctest::Approx(0.002 + 2 * tx).epsilon(1e-12));
        CHECK(p.load == doctest::Approx(0.0));
    }
    SUBCASE("bottleneck load convention") {
        snap.links[{0, 1}].utilization = 0.2;
        snap.links[{1, 2}].utilization = 0.7;
        CandidatePath p{{0, 1, 2}};
        aggregate_path_metrics(p, snap, 512, model);
        CHECK(p.load == doctest::Approx(0.7));
    }
    SUBCASE("path delay equals the sum of per-hop values") {
        const auto adj4 = adjacency_from(4, {{0, 1}, {1, 2}, {2, 3}});
        auto s4 = uniform_snapshot(adj4);
        s4.links[{0, 1}].prop_delay_s = 0.0015;
        s4.links[{1, 2}].prop_delay_s = 0.0022;
        s4.links[{2, 3}].prop_delay_s = 0.0030;
        s4.links[{1, 2}].capacity_bps = 2e8;
        s4.nodes[1].queue_bytes = 5000;
        s4.nodes[2].queue_bytes = 1000;
        CandidatePath p{{0, 1, 2, 3}};
        aggregate_path_metrics(p, s4, 800, model);
        double want = 0.0;
        for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}}) {
            const auto& l = s4.links[{u, v}];
            want += l.prop_delay_s + 800 * 8.0 / l.capacity_bps +
                    s4.nodes[u].queue_bytes * 8.0 / l.capacity_bps;
        }
        CHECK(p.delay_s == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("distortion prediction") {
    SUBCASE("perfect path collapses to the encoder term") {
        CHECK(predict_distortion({0.0, 0.0}, 0.01) == doctest::Approx(0.01).epsilon(1e-12));
    }
    SUBCASE("single impaired link, high fidelity") {
        CHECK(predict_distortion({0.1}, 0.01) == doctest::Approx(1.0 - 0.99 * 0.9).epsilon(1e-12));
    }
    SUBCASE("nondecreasing in hop count at equal impairment") {
        double prev = 0.0;
        std::vector<double> imps;
        for (int hops = 1; hops <= 8; ++hops) {
            imps.push_back(0.03);
            const double d = predict_distortion(imps, 0.01);
            CHECK(d >= prev);
            prev = d;
        }
    }
}

TEST_CASE("cost functions") {
    SUBCASE("J1") {
        CHECK(semantic_cost_j1(0.0, 0.77) == doctest::Approx(0.0));
        CHECK(semantic_cost_j1(1.0, 0.2) == doctest::Approx(0.2));
        CHECK(semantic_cost_j1(0.5, 0.3) == doctest::Approx(0.15).epsilon(1e-12));
    }
    SUBCASE("J2") {
        CHECK(perf_cost_j2(0.0, 0.0, 0.5, 0.5, 0.2) == doctest::Approx(0.0));
        CHECK(perf_cost_j2(0.2, 1.0, 0.5, 0.5, 0.2) == doctest::Approx(1.0));
        CHECK(perf_cost_j2(0.1, 0.4, 0.5, 0.5, 0.2) == doctest::Approx(0.45).epsilon(1e-12));
        CHECK(perf_cost_j2(10.0, 0.0, 0.5, 0.5, 0.2) == doctest::Approx(0.5));  // saturates
    }
    SUBCASE("total cost") {
        RoutingConfig cfg;
        CHECK(total_cost(ImportanceClass::high, 0.2, 0.4, cfg) ==
              doctest::Approx(0.26).epsilon(1e-12));
        cfg.kappa = {0.0, 0.0, 0.0};
        CHECK(total_cost(ImportanceClass::low, 0.9, 0.4, cfg) == doctest::Approx(0.4));
        cfg.kappa = {1.0, 1.0, 1.0};
        CHECK(total_cost(ImportanceClass::low, 0.9, 0.4, cfg) == doctest::Approx(0.9));
    }
    SUBCASE("bounds: inputs in range keep J1, J2, C in [0,1]") {
        Rng rng(5);
        RoutingConfig cfg;
        for (int i = 0; i < 500; ++i) {
            const double r = rng.uniform();
            const double dhat = rng.uniform();
            const double delay = rng.uniform(0.0, 1.0);
            const double load = rng.uniform();
            const double j1 = semantic_cost_j1(r, dhat);
            const double j2 = perf_cost_j2(delay, load, cfg.eta1, cfg.eta2, cfg.d_norm_s);
            const auto cls = static_cast<ImportanceClass>(rng.uniform_int(3));
            const double c = total_cost(cls, j1, j2, cfg);
            CHECK(j1 >= 0.0);
            CHECK(j1 <= 1.0);
            CHECK(j2 >= 0.0);
            CHECK(j2 <= 1.0);
            CHECK(c >= 0.0);
            CHECK(c <= 1.0);
        }
    }
}

namespace {

std::vector<CandidatePath> make_candidates(const std::vector<std::vector<int>>& adj,
                                           const TelemetrySnapshot& snap, int src, int dst, int k,
                                           double d_enc, const DistortionModel& model) {
    std::vector<CandidatePath> out;
    for (auto& hops : k_shortest_paths(adj, src, dst, k)) {
        CandidatePath p;
        p.hops = std::move(hops);
        aggregate_path_metrics(p, snap, 768, model);
        p.predicted_distortion = predict_distortion(p.link_impairments, d_enc);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

TEST_CASE("path selection with constraints and fallback") {
    const auto adj = adjacency_from(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    auto snap = uniform_snapshot(adj);
    const DistortionModel model;
    RoutingConfig cfg;

    SUBCASE("single candidate is returned") {
        auto cands = make_candidates(adj, snap, 0, 3, 1, 0.01, model);
        const auto pick = select_path(cands, 0.5, ImportanceClass::medium, cfg);
        CHECK(pick.index == 0);
        CHECK_FALSE(pick.constraint_violated);
    }
    SUBCASE("argmin of the evaluated cost wins") {
        snap.links[{1, 3}].loss_rate = 0.05;
        snap.links[{1, 3}].utilization = 0.5;
        snap.links[{0, 1}].utilization = 0.5;
        auto cands = make_candidates(adj, snap, 0, 3, 4, 0.01, model);
        REQUIRE(cands.size() == 2);
        // Brute-force the two costs.
        double best_cost = 1e9;
        int best = -1;
        for (int i = 0; i < 2; ++i) {
            const double j1 = semantic_cost_j1(0.8, cands[i].predicted_distortion);
            const double j2 =
                perf_cost_j2(cands[i].delay_s, cands[i].load, cfg.eta1, cfg.eta2, cfg.d_norm_s);
            const double c = total_cost(ImportanceClass::high, j1, j2, cfg);
            if (c < best_cost) {
                best_cost = c;
                best = i;
            }
        }
        const auto pick = select_path(cands, 0.8, ImportanceClass::high, cfg);
        CHECK(pick.index == best);
        CHECK(pick.cost == doctest::Approx(best_cost).epsilon(1e-12));
    }
    SUBCASE("all candidates violating bounds: unfiltered argmin, flagged") {
        auto cands = make_candidates(adj, snap, 0, 3, 4, 0.01, model);
        cfg.delta_max_s = 1e-9;
        const auto pick = select_path(cands, 0.5, ImportanceClass::medium, cfg);
        CHECK(pick.index >= 0);
        CHECK(pick.constraint_violated);
    }
    SUBCASE("empty candidate list signals routing failure") {
        CHECK_THROWS_AS(select_path({}, 0.5, ImportanceClass::medium, cfg), SimulationError);
    }
}

TEST_CASE("baseline selectors") {
    const auto adj = adjacency_from(5, {{0, 1}, {1, 4}, {0, 2}, {2, 3}, {3, 4}});
    auto snap = uniform_snapshot(adj);
    snap.links[{0, 1}].utilization = 0.8;
    snap.links[{1, 4}].utilization = 0.8;
    snap.links[{0, 2}].utilization = 0.1;
    const DistortionModel model;
    auto cands = make_candidates(adj, snap, 0, 4, 8, 0.04, model);
    REQUIRE(cands.size() == 2);

    SUBCASE("SP takes fewer hops, LBR takes lower load") {
        CHECK(baseline_route(Scheme::sp, cands).index == 0);
        CHECK(cands[baseline_route(Scheme::lbr, cands).index].load == doctest::Approx(0.1));
    }
    SUBCASE("DMR takes minimum predicted distortion") {
        cands[0].predicted_distortion = 0.05;
        cands[1].predicted_distortion = 0.02;
        CHECK(baseline_route(Scheme::dmr, cands).index == 1);
    }
    SUBCASE("SP equals the BFS oracle") {
        const auto want = bfs_oracle(adj, 0, 4);
        CHECK(cands[baseline_route(Scheme::sp, cands).index].hops.size() == want.size());
    }
    SUBCASE("baseline independence from irrelevant metrics") {
        const int sp_pick = baseline_route(Scheme::sp, cands).index;
        const int lbr_pick = baseline_route(Scheme::lbr, cands).index;
        auto mutated = cands;
        for (auto& c : mutated) {
            c.load = 1.0 - c.load;
            c.predicted_distortion = 1.0 - c.predicted_distortion;
        }
        CHECK(baseline_route(Scheme::sp, mutated).index == sp_pick);
        auto mutated2 = cands;
        for (auto& c : mutated2) c.predicted_distortion = 1.0 - c.predicted_distortion;
        CHECK(baseline_route(Scheme::lbr, mutated2).index == lbr_pick);
    }
}

TEST_CASE("raising kappa can only move selection toward the lower-distortion path") {
    // Candidate 0 dominates on distortion, candidate 1 on delay/load.
    std::vector<CandidatePath> cands(2);
    cands[0].hops = {0, 1, 2, 3};
    cands[0].delay_s = 0.15;
    cands[0].load = 0.6;
    cands[0].predicted_distortion = 0.02;
    cands[1].hops = {0, 4, 3};
    cands[1].delay_s = 0.02;
    cands[1].load = 0.1;
    cands[1].predicted_distortion = 0.3;

    RoutingConfig cfg;
    bool seen_low_d = false;
    for (int step = 0; step <= 20; ++step) {
        const double kappa = step / 20.0;
        cfg.kappa = {kappa, kappa, kappa};
        const auto pick = select_path(cands, 0.9, ImportanceClass::medium, cfg);
        if (pick.index == 0) seen_low_d = true;
        // Single crossing: once the low-distortion path wins it keeps winning.
        if (seen_low_d) CHECK(pick.index == 0);
    }
    CHECK(seen_low_d);
}

TEST_CASE("selection oracle equivalence on random small topologies") {
    // Exhaustive candidates vs brute-force argmin over every simple path.
    Rng rng(2025);
    const DistortionModel model;
    RoutingConfig cfg;
    cfg.delta_max_s = 1e9;  // disable constraints; pure argmin comparison
    cfg.load_max = 1e9;

    for (int trial = 0; trial < 200; ++trial) {
        const int n = 4 + static_cast<int>(rng.uniform_int(5));  // up to 8 nodes
        std::vector<std::pair<int, int>> links;
        for (int i = 1; i < n; ++i) links.emplace_back(static_cast<int>(rng.uniform_int(i)), i);
        for (int e = 0; e < n; ++e) {
            const int a = static_cast<int>(rng.uniform_int(n));
            const int b = static_cast<int>(rng.uniform_int(n));
            if (a != b) links.emplace_back(std::min(a, b), std::max(a, b));
        }
        const auto adj = adjacency_from(n, links);
        auto snap = uniform_snapshot(adj);
        for (auto& [key, link] : snap.links) {
            link.utilization = rng.uniform();
            link.loss_rate = rng.uniform(0.0, 0.05);
            link.sinr_norm = rng.uniform();
            link.queue_util = rng.uniform();
            link.prop_delay_s = rng.uniform(0.001, 0.003);
        }
        for (auto& node : snap.nodes) node.queue_bytes = rng.uniform(0.0, 50000.0);

        const double r = rng.uniform();
        const auto cls = static_cast<ImportanceClass>(rng.uniform_int(3));
        const double d_enc = rng.uniform(0.0, 0.1);

        const auto oracle_paths = all_simple_paths(adj, 0, n - 1);
        if (oracle_paths.empty()) continue;

        auto cands =
            make_candidates(adj, snap, 0, n - 1, static_cast<int>(oracle_paths.size()) + 10,
                            d_enc, model);
        REQUIRE(cands.size() == oracle_paths.size());
        const auto pick = select_path(cands, r, cls, cfg);

        // Brute force with identical tie-breaking.
        int best = -1;
        double best_cost = 0.0;
        for (int i = 0; i < static_cast<int>(cands.size()); ++i) {
            const double j1 = semantic_cost_j1(r, cands[i].predicted_distortion);
            const double j2 =
                perf_cost_j2(cands[i].delay_s, cands[i].load, cfg.eta1, cfg.eta2, cfg.d_norm_s);
            const double c = total_cost(cls, j1, j2, cfg);
            const bool tie_better =
                best >= 0 && c == best_cost &&
                (cands[i].hops.size() < cands[best].hops.size() ||
                 (cands[i].hops.size() == cands[best].hops.size() &&
                  cands[i].hops < cands[best].hops));
            if (best < 0 || c < best_cost || tie_better) {
                best = i;
                best_cost = c;
            }
        }
        CHECK(pick.index == best);

        // SP agrees with the BFS oracle on hop count.
        const auto sp = baseline_route(Scheme::sp, cands);
        CHECK(cands[sp.index].hops.size() == bfs_oracle(adj, 0, n - 1).size());
    }
}

TEST_CASE("deterministic selection for identical inputs") {
    const auto adj = adjacency_from(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    auto snap = uniform_snapshot(adj);
    snap.links[{0, 1}].utilization = 0.4;
    const DistortionModel model;
    RoutingConfig cfg;
    auto c1 = make_candidates(adj, snap, 0, 3, 4, 0.01, model);
    auto c2 = make_candidates(adj, snap, 0, 3, 4, 0.01, model);
    const auto p1 = select_path(c1, 0.6, ImportanceClass::medium, cfg);
    const auto p2 = select_path(c2, 0.6, ImportanceClass::medium, cfg);
    CHECK(p1.index == p2.index);
    CHECK(p1.cost == p2.cost);
}

TEST_CASE("topology construction validates") {
    std::vector<NetNode> nodes(3);
    for (int i = 0; i < 3; ++i) {
        nodes[i].id = i;
        nodes[i].pos = {100.0 * i, 50.0};
    }
    SUBCASE("connected layout accepted") {
        const Topology t(nodes, {{0, 1}, {1, 2}}, 1000.0);
        CHECK(t.connected());
        CHECK(t.has_link(1, 0));
        CHECK_FALSE(t.has_link(0, 2));
    }
    SUBCASE("disconnected layout rejected") {
        CHECK_THROWS_AS(Topology(nodes, {{0, 1}}, 1000.0), ConfigError);
    }
    SUBCASE("position outside area rejected") {
        nodes[2].pos = {2000.0, 0.0};
        CHECK_THROWS_AS(Topology(nodes, {{0, 1}, {1, 2}}, 1000.0), ConfigError);
    }
}
