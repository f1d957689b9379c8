// Shared fixtures and independent brute-force oracles for the test suite.
//
// The oracles deliberately re-derive everything from first principles
// (exhaustive chain enumeration, exhaustive subset search, direct cycle
// hunting) so that agreement with the library is meaningful evidence and not
// a tautology.
#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "ampcg/graph.hpp"
#include "ampcg/graph_ops.hpp"
#include "ampcg/rng.hpp"
#include "ampcg/separation.hpp"

namespace testutil {

// ------------------------------------------------------------- fixtures ----

// Two regressions into one undirected pair: X -> A - B <- Y.
inline ampcg::ChainGraph fig_two_flags() {
    ampcg::ChainGraph g;
    for (const char* v : {"X", "A", "B", "Y"}) g.add_vertex(v);
    g.add_directed("X", "A");
    g.add_undirected("A", "B");
    g.add_directed("Y", "B");
    return g;
}

// Six-vertex walkthrough graph: a -- b, b -> d, a -> c, d -> e, c -> e,
// e -> f. One triplex ({c,d}, e).
inline ampcg::ChainGraph fig_walkthrough() {
    ampcg::ChainGraph g;
    for (const char* v : {"a", "b", "c", "d", "e", "f"}) g.add_vertex(v);
    g.add_undirected("a", "b");
    g.add_directed("a", "c");
    g.add_directed("b", "d");
    g.add_directed("d", "e");
    g.add_directed("c", "e");
    g.add_directed("e", "f");
    return g;
}

// The augmented graph of fig_walkthrough: its skeleton plus the chord c -- d.
inline ampcg::UndirectedGraph fig_walkthrough_augmented() {
    ampcg::UndirectedGraph h(std::vector<std::string>{"a", "b", "c", "d", "e", "f"});
    const auto edge = [&](const char* u, const char* v) { h.add_edge(h.index(u), h.index(v)); };
    edge("a", "b");
    edge("b", "d");
    edge("d", "e");
    edge("a", "c");
    edge("c", "e");
    edge("e", "f");
    edge("c", "d");
    return h;
}

// Five-vertex DAG behind the order-dependence examples: b -> a, c -> a,
// b -> d, c -> e, d -> e.
inline ampcg::ChainGraph fig_vee() {
    ampcg::ChainGraph g;
    for (const char* v : {"a", "b", "c", "d", "e"}) g.add_vertex(v);
    g.add_directed("b", "a");
    g.add_directed("c", "a");
    g.add_directed("b", "d");
    g.add_directed("c", "e");
    g.add_directed("d", "e");
    return g;
}

// CG variant of fig_vee learned under the first ordering: b -> a, c -> a,
// c -> e, d -> e, b -- d.
inline ampcg::ChainGraph fig_vee_order1() {
    ampcg::ChainGraph g;
    for (const char* v : {"a", "b", "c", "d", "e"}) g.add_vertex(v);
    g.add_directed("b", "a");
    g.add_directed("c", "a");
    g.add_directed("c", "e");
    g.add_directed("d", "e");
    g.add_undirected("b", "d");
    return g;
}

// CG variant learned under the third ordering: b -> a, c -> a, e -- c,
// e -- d, b -- d.
inline ampcg::ChainGraph fig_vee_order3() {
    ampcg::ChainGraph g;
    for (const char* v : {"a", "b", "c", "d", "e"}) g.add_vertex(v);
    g.add_directed("b", "a");
    g.add_directed("c", "a");
    g.add_undirected("e", "c");
    g.add_undirected("e", "d");
    g.add_undirected("b", "d");
    return g;
}

// Eight-vertex counterexample: a four-cycle chain component e - f - g - h - e
// (e - h closing it) with one regression parent per member: a -> e, b -> f,
// c -> g, d -> h. The pair (f, h) has exactly one minimal separator,
// {a, c, e, g}.
inline ampcg::ChainGraph fig_ring() {
    ampcg::ChainGraph g;
    for (const char* v : {"a", "b", "c", "d", "e", "f", "g", "h"}) g.add_vertex(v);
    g.add_directed("a", "e");
    g.add_directed("b", "f");
    g.add_directed("c", "g");
    g.add_directed("d", "h");
    g.add_undirected("e", "h");
    g.add_undirected("e", "f");
    g.add_undirected("f", "g");
    g.add_undirected("g", "h");
    return g;
}

// The published augmented graph of fig_ring: original skeleton plus twelve
// links (eight triplexes, four bi-flags).
inline ampcg::UndirectedGraph fig_ring_augmented() {
    ampcg::UndirectedGraph h(
        std::vector<std::string>{"a", "b", "c", "d", "e", "f", "g", "h"});
    const auto edge = [&](const char* u, const char* v) { h.add_edge(h.index(u), h.index(v)); };
    // skeleton
    edge("a", "e");
    edge("b", "f");
    edge("c", "g");
    edge("d", "h");
    edge("e", "h");
    edge("e", "f");
    edge("f", "g");
    edge("g", "h");
    // triplex links
    edge("a", "h");
    edge("a", "f");
    edge("b", "e");
    edge("b", "g");
    edge("c", "f");
    edge("c", "h");
    edge("e", "d");
    edge("g", "d");
    // bi-flag links
    edge("a", "d");
    edge("a", "b");
    edge("b", "c");
    edge("c", "d");
    return h;
}

// --------------------------------------------------------------- oracles ----

inline std::vector<int> to_idx(const ampcg::ChainGraph& g, const std::vector<std::string>& names) {
    std::vector<int> out;
    for (const auto& n : names) out.push_back(g.index(n));
    return out;
}

// End-mark of the edge between `from` and `at`, seen from `at`:
// 0 = arrow into `at`, 1 = tail (edge leaves `at`), 2 = undirected.
inline int end_mark(const ampcg::ChainGraph& g, int from, int at) {
    if (g.has_directed(from, at)) return 0;
    if (g.has_directed(at, from)) return 1;
    return 2;
}

// Z-openness of one concrete chain v0..vk per the pathwise criterion: a
// triplex node (arrow present, no tail in its two end-marks) passes iff it
// lies in An(Z); any other interior node must avoid Z unless it sits between
// two undirected edges and keeps a parent outside Z.
inline bool chain_open(const ampcg::ChainGraph& g, const std::vector<int>& chain,
                       const std::vector<char>& in_z, const std::vector<char>& in_anz) {
    for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
        const int b = chain[i];
        const int m1 = end_mark(g, chain[i - 1], b);
        const int m2 = end_mark(g, chain[i + 1], b);
        const bool triplex = (m1 != 1 && m2 != 1) && !(m1 == 2 && m2 == 2);
        if (triplex) {
            if (!in_anz[b]) return false;
        } else if (in_z[b]) {
            if (!(m1 == 2 && m2 == 2)) return false;
            bool escaped = false;
            for (int q : g.pa(b))
                if (!in_z[q]) escaped = true;
            if (!escaped) return false;
        }
    }
    return true;
}

// Brute-force pathwise separation: enumerate every simple chain whose
// interior avoids X and Y (sub-chain closure of openness makes that enough)
// and fail as soon as one is Z-open.
inline bool chains_separated(const ampcg::ChainGraph& g, const std::vector<std::string>& xs,
                             const std::vector<std::string>& ys,
                             const std::vector<std::string>& zs) {
    const int p = g.size();
    std::vector<char> in_x(p, 0), in_y(p, 0), in_z(p, 0), in_anz(p, 0);
    for (int v : to_idx(g, xs)) in_x[v] = 1;
    for (int v : to_idx(g, ys)) in_y[v] = 1;
    const auto zi = to_idx(g, zs);
    for (int v : zi) in_z[v] = 1;
    for (int v : ampcg::ancestral_closure(g, zi)) in_anz[v] = 1;

    std::vector<int> chain;
    std::vector<char> used(p, 0);
    bool open_found = false;
    std::function<void(int)> extend = [&](int v) {
        if (open_found) return;
        chain.push_back(v);
        used[v] = 1;
        if (in_y[v]) {
            if (chain_open(g, chain, in_z, in_anz)) open_found = true;
        } else {
            for (int w = 0; w < p; ++w)
                if (!used[w] && g.adjacent(v, w) && !in_x[w]) extend(w);
        }
        used[v] = 0;
        chain.pop_back();
    };
    for (int v = 0; v < p; ++v)
        if (in_x[v] && !open_found) {
            // chains of length >= 1; a start vertex in X never doubles as the Y end
            chain.clear();
            std::fill(used.begin(), used.end(), 0);
            extend(v);
        }
    return !open_found;
}

// Direct hunt for a partially directed cycle: some u -> v with u again
// reachable from v along edges that are undirected or directed forward.
inline bool has_partially_directed_cycle(const ampcg::ChainGraph& g) {
    const int p = g.size();
    for (int u = 0; u < p; ++u)
        for (int v = 0; v < p; ++v) {
            if (!g.has_directed(u, v)) continue;
            std::vector<char> seen(p, 0);
            std::vector<int> stack{v};
            seen[v] = 1;
            while (!stack.empty()) {
                const int w = stack.back();
                stack.pop_back();
                if (w == u) break;
                for (int t = 0; t < p; ++t)
                    if (!seen[t] && (g.has_undirected(w, t) || g.has_directed(w, t))) {
                        seen[t] = 1;
                        stack.push_back(t);
                    }
            }
            if (seen[u]) return true;
        }
    return false;
}

// All subsets of `pool` with size <= max_size, in size-then-index order.
inline std::vector<std::vector<std::string>> subsets_up_to(const std::vector<std::string>& pool,
                                                           int max_size) {
    std::vector<std::vector<std::string>> out;
    const int n = static_cast<int>(pool.size());
    for (int k = 0; k <= std::min(max_size, n); ++k) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            std::vector<std::string> sub;
            for (int i : idx) sub.push_back(pool[i]);
            out.push_back(sub);
            int i = k - 1;
            while (i >= 0 && idx[i] == n - k + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (k == 0 && n == 0) break;
    }
    return out;
}

inline bool separates(const ampcg::ChainGraph& g, const std::string& u, const std::string& v,
                      const std::vector<std::string>& z) {
    return ampcg::p_separated_aug(g, {{u}, {v}, z});
}

// Exhaustive list of inclusion-minimal separators of (u, v): every subset of
// the remaining vertices is tested with the augmentation criterion, then
// non-minimal entries are discarded.
inline std::vector<std::vector<std::string>> brute_minimal_separators(const ampcg::ChainGraph& g,
                                                                      const std::string& u,
                                                                      const std::string& v) {
    std::vector<std::string> others;
    for (const auto& n : g.names())
        if (n != u && n != v) others.push_back(n);
    std::sort(others.begin(), others.end());  // keeps every emitted subset sorted
    std::vector<std::vector<std::string>> seps;
    for (const auto& s : subsets_up_to(others, static_cast<int>(others.size())))
        if (separates(g, u, v, s)) seps.push_back(s);
    std::vector<std::vector<std::string>> minimal;
    for (const auto& s : seps) {
        bool min = true;
        for (const auto& t : seps) {
            if (t.size() >= s.size() || t == s) continue;
            if (std::includes(s.begin(), s.end(), t.begin(), t.end())) {
                min = false;
                break;
            }
        }
        if (min) minimal.push_back(s);
    }
    std::sort(minimal.begin(), minimal.end(),
              [](const std::vector<std::string>& a, const std::vector<std::string>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });
    return minimal;
}

// True iff z separates u,v and no proper subset of z does.
inline bool brute_is_minimal_separator(const ampcg::ChainGraph& g, const std::string& u,
                                       const std::string& v, std::vector<std::string> z) {
    std::sort(z.begin(), z.end());
    if (!separates(g, u, v, z)) return false;
    for (const auto& sub : subsets_up_to(z, static_cast<int>(z.size()) - 1))
        if (separates(g, u, v, sub)) return false;
    return true;
}

// Arbitrary random mixed graph (not necessarily a valid chain graph), for
// validity-predicate cross-checks.
inline ampcg::ChainGraph random_mixed_graph(int p, double edge_prob, std::uint64_t seed) {
    ampcg::Rng rng(seed);
    ampcg::ChainGraph g;
    for (int v = 0; v < p; ++v) g.add_vertex("v" + std::to_string(v));
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            if (!rng.bernoulli(edge_prob)) continue;
            const auto kind = rng.below(3);
            if (kind == 0)
                g.add_undirected(i, j);
            else if (kind == 1)
                g.add_directed(i, j);
            else
                g.add_directed(j, i);
        }
    return g;
}

inline std::vector<std::string> sorted(std::vector<std::string> xs) {
    std::sort(xs.begin(), xs.end());
    return xs;
}

}  // namespace testutil
