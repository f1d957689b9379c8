#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <fstream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ampcg/errors.hpp"
#include "ampcg/graph_ops.hpp"
#include "ampcg/learn_lcd.hpp"
#include "ampcg/rng.hpp"
#include "ampcg/synth_eval.hpp"
#include "helpers.hpp"

using namespace ampcg;
using namespace testutil;

namespace {

using PairSet = std::set<std::pair<std::string, std::string>>;

PairSet und_set(const UndirectedGraph& g) {
    PairSet out;
    for (auto [u, v] : g.edges()) {
        auto a = g.name(u), b = g.name(v);
        if (b < a) std::swap(a, b);
        out.insert({a, b});
    }
    return out;
}

PairSet und_set(const ChainGraph& g) {
    PairSet out;
    for (auto [u, v] : g.undirected_edges()) {
        auto a = g.name(u), b = g.name(v);
        if (b < a) std::swap(a, b);
        out.insert({a, b});
    }
    return out;
}

PairSet dir_set(const ChainGraph& g) {
    PairSet out;
    for (auto [t, h] : g.directed_edges()) out.insert({g.name(t), g.name(h)});
    return out;
}

// True when S blocks every path between A and B in the plain undirected sense.
bool ug_separates(const UndirectedGraph& g, const std::set<int>& a, const std::set<int>& b,
                  const std::set<int>& s) {
    std::vector<char> seen(g.size(), 0);
    std::deque<int> queue;
    for (int v : a)
        if (!s.count(v)) {
            seen[v] = 1;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        const int x = queue.front();
        queue.pop_front();
        if (b.count(x)) return false;
        for (int y : g.neighbors(x))
            if (!seen[y] && !s.count(y)) {
                seen[y] = 1;
                queue.push_back(y);
            }
    }
    return true;
}

int tree_component(const SeparationTree& t, int start, int banned_edge, std::vector<int>& mark,
                   int tag) {
    std::deque<int> queue = {start};
    mark[start] = tag;
    int count = 1;
    while (!queue.empty()) {
        const int x = queue.front();
        queue.pop_front();
        for (std::size_t e = 0; e < t.edges.size(); ++e) {
            if (static_cast<int>(e) == banned_edge) continue;
            const auto& te = t.edges[e];
            int y = -1;
            if (te.i == x) y = te.j;
            if (te.j == x) y = te.i;
            if (y >= 0 && mark[y] != tag) {
                mark[y] = tag;
                queue.push_back(y);
                ++count;
            }
        }
    }
    return count;
}

}  // namespace

TEST_CASE("oracle and full-conditional UIGs both equal the augmented graph") {
    {
        OracleCISource src(fig_walkthrough());
        const UndirectedGraph uig = build_uig(src, {UIGKind::Oracle, ""});
        CHECK(und_set(uig) == und_set(fig_walkthrough_augmented()));
    }
    {
        // testing u against v given all the rest probes the same adjacencies
        OracleCISource src(fig_walkthrough());
        const UndirectedGraph uig = build_uig(src, {UIGKind::FullConditional, ""});
        CHECK(und_set(uig) == und_set(fig_walkthrough_augmented()));
    }
    {
        OracleCISource src(fig_ring());
        const UndirectedGraph uig = build_uig(src, {UIGKind::Oracle, ""});
        CHECK(und_set(uig) == und_set(fig_ring_augmented()));
    }
}

TEST_CASE("triangulation adds the expected chords") {
    {
        const UndirectedGraph t = triangulate(fig_walkthrough_augmented());
        PairSet expected = und_set(fig_walkthrough_augmented());
        expected.insert({"b", "c"});
        CHECK(und_set(t) == expected);
    }
    {
        // the ring's augmented graph is K8 minus two 4-cycles; the greedy
        // elimination completes the b,d,f,h cycle (four fill edges)
        const UndirectedGraph t = triangulate(fig_ring_augmented());
        PairSet expected = und_set(fig_ring_augmented());
        expected.insert({"b", "d"});
        expected.insert({"b", "h"});
        expected.insert({"d", "f"});
        expected.insert({"f", "h"});
        CHECK(und_set(t) == expected);
    }
    {
        // already chordal: unchanged
        const UndirectedGraph t = triangulate(fig_walkthrough_augmented());
        CHECK(und_set(triangulate(t)) == und_set(t));
        UndirectedGraph star(std::vector<std::string>{"s", "x", "y", "z"});
        star.add_edge(0, 1);
        star.add_edge(0, 2);
        star.add_edge(0, 3);
        CHECK(und_set(triangulate(star)) == und_set(star));
    }
    {
        UndirectedGraph c5(std::vector<std::string>{"a", "b", "c", "d", "e"});
        for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
        const UndirectedGraph t = triangulate(c5);
        CHECK(und_set(t).size() == 7);  // exactly two chords
    }
}

TEST_CASE("junction tree of the walkthrough matches the published decomposition") {
    const SeparationTree t = junction_tree(triangulate(fig_walkthrough_augmented()));
    REQUIRE(t.nodes.size() == 4);
    CHECK(t.nodes[0] == std::vector<std::string>{"a", "b", "c"});
    CHECK(t.nodes[1] == std::vector<std::string>{"b", "c", "d"});
    CHECK(t.nodes[2] == std::vector<std::string>{"c", "d", "e"});
    CHECK(t.nodes[3] == std::vector<std::string>{"e", "f"});
    REQUIRE(t.edges.size() == 3);
    CHECK(t.edges[0].i == 0);
    CHECK(t.edges[0].j == 1);
    CHECK(t.edges[0].sep == std::vector<std::string>{"b", "c"});
    CHECK(t.edges[1].i == 1);
    CHECK(t.edges[1].j == 2);
    CHECK(t.edges[1].sep == std::vector<std::string>{"c", "d"});
    CHECK(t.edges[2].i == 2);
    CHECK(t.edges[2].j == 3);
    CHECK(t.edges[2].sep == std::vector<std::string>{"e"});
    CHECK(t.to_json() ==
          R"({"nodes":[["a","b","c"],["b","c","d"],["c","d","e"],["e","f"]],)"
          R"("edges":[{"i":0,"j":1,"sep":["b","c"]},{"i":1,"j":2,"sep":["c","d"]},)"
          R"({"i":2,"j":3,"sep":["e"]}]})");
}

TEST_CASE("junction tree edge cases") {
    {
        UndirectedGraph c4(std::vector<std::string>{"a", "b", "c", "d"});
        for (int i = 0; i < 4; ++i) c4.add_edge(i, (i + 1) % 4);
        CHECK_THROWS_AS(junction_tree(c4), PreconditionError);
    }
    {
        const SeparationTree t =
            junction_tree(UndirectedGraph::complete({"x", "y", "z"}));
        REQUIRE(t.nodes.size() == 1);
        CHECK(t.nodes[0] == std::vector<std::string>{"x", "y", "z"});
        CHECK(t.edges.empty());
    }
    {
        // two triangles sharing the vertex c
        UndirectedGraph g(std::vector<std::string>{"a", "b", "c", "d", "e"});
        g.add_edge(0, 1);
        g.add_edge(0, 2);
        g.add_edge(1, 2);
        g.add_edge(2, 3);
        g.add_edge(2, 4);
        g.add_edge(3, 4);
        const SeparationTree t = junction_tree(g);
        REQUIRE(t.nodes.size() == 2);
        REQUIRE(t.edges.size() == 1);
        CHECK(t.edges[0].sep == std::vector<std::string>{"c"});
    }
    {
        // disconnected components end up joined by an empty separator
        UndirectedGraph g(std::vector<std::string>{"a", "b", "c", "d"});
        g.add_edge(0, 1);
        g.add_edge(2, 3);
        const SeparationTree t = junction_tree(g);
        REQUIRE(t.nodes.size() == 2);
        REQUIRE(t.edges.size() == 1);
        CHECK(t.edges[0].sep.empty());
    }
}

TEST_CASE("junction trees satisfy clique cover, running intersection, and separation") {
    for (int t = 0; t < 12; ++t) {
        const ChainGraph truth = random_amp_cg({6 + t % 4, 2.0, derive_seed(41, "jt", t)});
        const UndirectedGraph aug = augment(truth);
        const UndirectedGraph chordal = triangulate(aug);
        const SeparationTree tree = junction_tree(chordal);
        const int k = static_cast<int>(tree.nodes.size());
        REQUIRE(k >= 1);
        CHECK(static_cast<int>(tree.edges.size()) == k - 1);  // spanning tree

        // every augmented edge is inside some node
        for (auto [u, v] : aug.edges()) {
            bool covered = false;
            for (const auto& node : tree.nodes) {
                const bool has_u =
                    std::find(node.begin(), node.end(), aug.name(u)) != node.end();
                const bool has_v =
                    std::find(node.begin(), node.end(), aug.name(v)) != node.end();
                if (has_u && has_v) {
                    covered = true;
                    break;
                }
            }
            CHECK(covered);
        }

        // running intersection: the nodes containing a vertex form a subtree
        for (const auto& name : truth.names()) {
            std::vector<int> holders;
            for (int h = 0; h < k; ++h)
                if (std::find(tree.nodes[h].begin(), tree.nodes[h].end(), name) !=
                    tree.nodes[h].end())
                    holders.push_back(h);
            REQUIRE(!holders.empty());
            // count reachable holders through holder-only tree edges
            std::set<int> hset(holders.begin(), holders.end());
            std::set<int> seen = {holders[0]};
            std::deque<int> queue = {holders[0]};
            while (!queue.empty()) {
                const int x = queue.front();
                queue.pop_front();
                for (const auto& e : tree.edges) {
                    int y = -1;
                    if (e.i == x) y = e.j;
                    if (e.j == x) y = e.i;
                    if (y >= 0 && hset.count(y) && !seen.count(y)) {
                        seen.insert(y);
                        queue.push_back(y);
                    }
                }
            }
            CHECK(seen.size() == hset.size());
        }

        // each tree-edge separator separates the two sides in the augmented graph
        for (std::size_t e = 0; e < tree.edges.size(); ++e) {
            std::vector<int> mark(k, -1);
            tree_component(tree, tree.edges[e].i, static_cast<int>(e), mark, 0);
            std::set<int> s;
            for (const auto& nm : tree.edges[e].sep) s.insert(aug.index(nm));
            std::set<int> left, right;
            for (int h = 0; h < k; ++h)
                for (const auto& nm : tree.nodes[h]) {
                    const int v = aug.index(nm);
                    if (s.count(v)) continue;
                    (mark[h] == 0 ? left : right).insert(v);
                }
            CHECK(ug_separates(aug, left, right, s));
        }

        // every vertex shares a node with each of its parents
        for (int v = 0; v < truth.size(); ++v)
            for (int parent : truth.pa(v)) {
                bool together = false;
                for (const auto& node : tree.nodes) {
                    const bool has_v =
                        std::find(node.begin(), node.end(), truth.name(v)) != node.end();
                    const bool has_p =
                        std::find(node.begin(), node.end(), truth.name(parent)) != node.end();
                    if (has_v && has_p) {
                        together = true;
                        break;
                    }
                }
                CHECK(together);
            }
    }
}

TEST_CASE("decomposition learner recovers the walkthrough") {
    OracleCISource src(fig_walkthrough());
    const LcdResult r = lcd_amp(src, {}, {UIGKind::Oracle, ""});
    CHECK(und_set(r.uig) == und_set(fig_walkthrough_augmented()));
    REQUIRE(r.tree.nodes.size() == 4);
    CHECK(und_set(r.skeleton) == und_set(skeleton(fig_walkthrough())));
    REQUIRE(r.sepsets.find("b", "c") != nullptr);
    CHECK(*r.sepsets.find("b", "c") == std::vector<std::string>{"a"});
    REQUIRE(r.sepsets.find("c", "d") != nullptr);
    CHECK(*r.sepsets.find("c", "d") == std::vector<std::string>{"b"});
    CHECK(dir_set(r.graph) == PairSet{{"c", "e"}, {"d", "e"}, {"e", "f"}});
    CHECK(und_set(r.graph) == PairSet{{"a", "b"}, {"a", "c"}, {"b", "d"}});
    CHECK(triplex_equivalent(r.graph, fig_walkthrough()));
    CHECK(r.log.query_count > 0);
}

TEST_CASE("ring edge f-h survives every local phase and dies in the global prune") {
    OracleCISource src(fig_ring());
    const LcdResult r = lcd_amp(src, {}, {UIGKind::Oracle, ""});

    REQUIRE(r.tree.nodes.size() == 2);
    CHECK(r.tree.nodes[0] == std::vector<std::string>{"a", "b", "d", "e", "f", "h"});
    CHECK(r.tree.nodes[1] == std::vector<std::string>{"b", "c", "d", "f", "g", "h"});
    REQUIRE(r.tree.edges.size() == 1);
    CHECK(r.tree.edges[0].sep == std::vector<std::string>{"b", "d", "f", "h"});

    CHECK(und_set(r.skeleton) == und_set(skeleton(fig_ring())));
    REQUIRE(r.sepsets.find("f", "h") != nullptr);
    CHECK(*r.sepsets.find("f", "h") == std::vector<std::string>{"a", "c", "e", "g"});

    // no tree node contains {a,c,e,g}, so the only level-4 removal is the
    // global prune dropping f-h
    int deep = 0;
    for (const auto& e : r.log.removals)
        if (e.level == 4) {
            ++deep;
            CHECK(((e.u == "f" && e.v == "h") || (e.u == "h" && e.v == "f")));
            CHECK(e.sepset == std::vector<std::string>{"a", "c", "e", "g"});
        }
    CHECK(deep == 1);

    // the pair (e,g) never shares a node; its separator is the tree label
    REQUIRE(r.sepsets.find("e", "g") != nullptr);
    CHECK(*r.sepsets.find("e", "g") == std::vector<std::string>{"b", "d", "f", "h"});

    CHECK(dir_set(r.graph) == dir_set(fig_ring()));
    CHECK(und_set(r.graph) == und_set(fig_ring()));
}

TEST_CASE("decomposition learner matches the truth on random oracles") {
    for (int t = 0; t < 12; ++t) {
        const ChainGraph truth = random_amp_cg({6 + t % 4, 2.0, derive_seed(42, "lcd", t)});
        OracleCISource src(truth);
        const LcdResult r = lcd_amp(src, {}, {UIGKind::Oracle, ""});
        CHECK(und_set(r.skeleton) == und_set(skeleton(truth)));
        CHECK(is_amp_cg(r.graph));
        CHECK(triplex_equivalent(r.graph, truth));
    }
}

TEST_CASE("decomposition learner on an empty truth yields an empty graph") {
    ChainGraph empty;
    for (const char* v : {"w", "x", "y", "z"}) empty.add_vertex(v);
    OracleCISource src(empty);
    const LcdResult r = lcd_amp(src, {}, {UIGKind::Oracle, ""});
    CHECK(und_set(r.uig).empty());
    CHECK(dir_set(r.graph).empty());
    CHECK(und_set(r.graph).empty());
    REQUIRE(r.sepsets.find("w", "z") != nullptr);
    CHECK(r.sepsets.find("w", "z")->empty());
}

TEST_CASE("UIG construction validates its inputs") {
    {
        // gaussian full-conditional needs n > p + 3
        Matrix corr = Matrix::identity(4);
        GaussianCISource src(corr, 7, 0.05, {"a", "b", "c", "d"});
        CHECK_THROWS_AS(build_uig(src, {UIGKind::FullConditional, ""}), PreconditionError);
        GaussianCISource ok(corr, 8, 0.05, {"a", "b", "c", "d"});
        CHECK(und_set(build_uig(ok, {UIGKind::FullConditional, ""})).empty());
    }
    {
        // concentration method is gaussian-only; oracle method needs an oracle
        FixtureCISource src({"a", "b", "c"});
        CHECK_THROWS_AS(build_uig(src, {UIGKind::GaussianConcentration, ""}),
                        PreconditionError);
        CHECK_THROWS_AS(build_uig(src, {UIGKind::Oracle, ""}), PreconditionError);
        // a closed list with no pins means everything stays dependent
        CHECK(und_set(build_uig(src, {UIGKind::FullConditional, ""})).size() == 3);
    }
    {
        // discrete full-conditional testing is refused beyond 12 variables
        Dataset d;
        d.kind = DatasetKind::Discrete;
        for (int i = 0; i < 13; ++i) {
            d.variables.push_back("v" + std::to_string(i));
            d.cardinality.push_back(2);
        }
        for (int row = 0; row < 8; ++row)
            d.rows.push_back(std::vector<double>(13, row % 2));
        DiscreteCISource src(d, 0.05);
        CHECK_THROWS_AS(build_uig(src, {UIGKind::FullConditional, ""}), PreconditionError);
    }
    {
        // file-based UIG: wrong vertex set and directed content are rejected
        const std::string good = "/tmp/ampcg_uig_good.txt";
        const std::string directed = "/tmp/ampcg_uig_directed.txt";
        const std::string mismatched = "/tmp/ampcg_uig_mismatch.txt";
        {
            ChainGraph g;
            g.add_vertex("x");
            g.add_vertex("y");
            g.add_vertex("z");
            g.add_undirected("x", "y");
            save_graph_file(g, good);
            ChainGraph h = g;
            h.add_directed("y", "z");
            save_graph_file(h, directed);
            ChainGraph m;
            m.add_vertex("x");
            m.add_vertex("y");
            save_graph_file(m, mismatched);
        }
        FixtureCISource src({"x", "y", "z"});
        const UndirectedGraph uig = build_uig(src, {UIGKind::File, good});
        CHECK(und_set(uig) == PairSet{{"x", "y"}});
        CHECK_THROWS_AS(build_uig(src, {UIGKind::File, directed}), PreconditionError);
        CHECK_THROWS_AS(build_uig(src, {UIGKind::File, mismatched}), PreconditionError);
        std::remove(good.c_str());
        std::remove(directed.c_str());
        std::remove(mismatched.c_str());
    }
}

TEST_CASE("concentration UIG from the implied model matches the augmented graph") {
    const ChainGraph truth = fig_walkthrough();
    const GaussianCGModel model = parametrize(truth, derive_seed(43, "uig"));
    const Matrix sigma = implied_covariance(model);
    const std::size_t p = sigma.rows();
    Matrix corr(p, p);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j)
            corr(i, j) = sigma(i, j) / std::sqrt(sigma(i, i) * sigma(j, j));
    GaussianCISource src(corr, 1000000, 0.01, model.graph.names());
    const UndirectedGraph uig = build_uig(src, {UIGKind::GaussianConcentration, ""});
    CHECK(und_set(uig) == und_set(augment(truth)));
}
