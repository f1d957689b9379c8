#include "ampcg/learn_lcd.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include <json.hpp>

#include "ampcg/errors.hpp"
#include "ampcg/graph_ops.hpp"

namespace ampcg {

namespace {

std::vector<std::string> resolve_order(const CISource& src,
                                       const std::vector<std::string>& requested) {
    if (requested.empty()) return src.variables();
    auto a = requested;
    auto b = src.variables();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
        throw PreconditionError("variable_order must be a permutation of the source variables");
    return requested;
}

// Maximum-cardinality search visit sequence; ties go to the lowest index, so
// the walk starts at vertex 0.
std::vector<int> mcs_visit(const UndirectedGraph& g) {
    const int n = g.size();
    std::vector<int> weight(n, 0), seq;
    std::vector<char> numbered(n, 0);
    seq.reserve(n);
    for (int t = 0; t < n; ++t) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!numbered[v] && (best < 0 || weight[v] > weight[best])) best = v;
        numbered[best] = 1;
        seq.push_back(best);
        for (int w : g.neighbors(best))
            if (!numbered[w]) ++weight[w];
    }
    return seq;
}

// Elimination game along the reverse visit sequence; returns the fill edges.
std::vector<std::pair<int, int>> fill_edges(const UndirectedGraph& g,
                                            const std::vector<int>& seq) {
    const int n = g.size();
    std::vector<std::set<int>> adj(n);
    for (auto [u, v] : g.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<std::pair<int, int>> fill;
    std::vector<char> gone(n, 0);
    for (int t = n - 1; t >= 0; --t) {
        const int v = seq[t];
        std::vector<int> nb;
        for (int w : adj[v])
            if (!gone[w]) nb.push_back(w);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (!adj[nb[i]].count(nb[j])) {
                    adj[nb[i]].insert(nb[j]);
                    adj[nb[j]].insert(nb[i]);
                    fill.emplace_back(std::min(nb[i], nb[j]), std::max(nb[i], nb[j]));
                }
        gone[v] = 1;
    }
    return fill;
}

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

}  // namespace

UndirectedGraph triangulate(const UndirectedGraph& g) {
    const int n = g.size();
    std::vector<std::set<int>> adj(n);
    for (auto [u, v] : g.edges()) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    UndirectedGraph out = g;
    std::vector<char> gone(n, 0);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        long best_fill = 0;
        for (int v = 0; v < n; ++v) {
            if (gone[v]) continue;
            std::vector<int> nb;
            for (int w : adj[v])
                if (!gone[w]) nb.push_back(w);
            long fill = 0;
            for (std::size_t i = 0; i < nb.size(); ++i)
                for (std::size_t j = i + 1; j < nb.size(); ++j)
                    if (!adj[nb[i]].count(nb[j])) ++fill;
            if (best < 0 || fill < best_fill) {
                best = v;
                best_fill = fill;
            }
        }
        std::vector<int> nb;
        for (int w : adj[best])
            if (!gone[w]) nb.push_back(w);
        for (std::size_t i = 0; i < nb.size(); ++i)
            for (std::size_t j = i + 1; j < nb.size(); ++j)
                if (!adj[nb[i]].count(nb[j])) {
                    adj[nb[i]].insert(nb[j]);
                    adj[nb[j]].insert(nb[i]);
                    out.add_edge(nb[i], nb[j]);
                }
        gone[best] = 1;
    }
    return out;
}

SeparationTree junction_tree(const UndirectedGraph& chordal) {
    const auto seq = mcs_visit(chordal);
    if (!fill_edges(chordal, seq).empty())
        throw PreconditionError("junction_tree requires a chordal graph");

    const int n = chordal.size();
    std::vector<int> pos(n);
    for (int t = 0; t < n; ++t) pos[seq[t]] = t;

    std::vector<std::vector<int>> candidates;
    for (int t = 0; t < n; ++t) {
        const int v = seq[t];
        std::vector<int> c = {v};
        for (int w : chordal.neighbors(v))
            if (pos[w] < t) c.push_back(w);
        std::sort(c.begin(), c.end());
        candidates.push_back(std::move(c));
    }
    std::vector<std::vector<int>> cliques;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < candidates.size() && maximal; ++j) {
            if (i == j) continue;
            const bool contained = std::includes(candidates[j].begin(), candidates[j].end(),
                                                 candidates[i].begin(), candidates[i].end());
            if (contained &&
                (candidates[j].size() > candidates[i].size() || (candidates[j] == candidates[i] && j < i)))
                maximal = false;
        }
        if (maximal) cliques.push_back(candidates[i]);
    }

    SeparationTree tree;
    for (const auto& c : cliques) {
        std::vector<std::string> names;
        for (int v : c) names.push_back(chordal.name(v));
        std::sort(names.begin(), names.end());
        tree.nodes.push_back(std::move(names));
    }
    std::sort(tree.nodes.begin(), tree.nodes.end());

    const int k = static_cast<int>(tree.nodes.size());
    struct Cand {
        int w, i, j;
    };
    std::vector<Cand> cands;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            std::vector<std::string> common;
            std::set_intersection(tree.nodes[i].begin(), tree.nodes[i].end(),
                                  tree.nodes[j].begin(), tree.nodes[j].end(),
                                  std::back_inserter(common));
            cands.push_back({static_cast<int>(common.size()), i, j});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        if (a.w != b.w) return a.w > b.w;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    Dsu dsu(k);
    for (const auto& c : cands) {
        if (!dsu.unite(c.i, c.j)) continue;
        SeparationTree::Edge e;
        e.i = c.i;
        e.j = c.j;
        std::set_intersection(tree.nodes[c.i].begin(), tree.nodes[c.i].end(),
                              tree.nodes[c.j].begin(), tree.nodes[c.j].end(),
                              std::back_inserter(e.sep));
        tree.edges.push_back(std::move(e));
    }
    std::sort(tree.edges.begin(), tree.edges.end(),
              [](const SeparationTree::Edge& a, const SeparationTree::Edge& b) {
                  return std::tie(a.i, a.j) < std::tie(b.i, b.j);
              });
    return tree;
}

std::string SeparationTree::to_json() const {
    nlohmann::ordered_json j;
    j["nodes"] = nodes;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& e : edges) {
        nlohmann::ordered_json je;
        je["i"] = e.i;
        je["j"] = e.j;
        je["sep"] = e.sep;
        arr.push_back(std::move(je));
    }
    j["edges"] = std::move(arr);
    return j.dump();
}

UndirectedGraph build_uig(CISource& src, const UIGMethod& method,
                          const std::vector<std::string>& order) {
    const auto vars = resolve_order(src, order);
    const int p = static_cast<int>(vars.size());

    if (method.kind == UIGKind::Oracle) {
        const auto* oracle = dynamic_cast<const OracleCISource*>(&src);
        if (!oracle)
            throw PreconditionError("oracle UIG construction requires an oracle CI source");
        const UndirectedGraph aug = augment(oracle->truth());
        UndirectedGraph out(vars);
        for (auto [u, v] : aug.edges()) out.add_edge(out.index(aug.name(u)), out.index(aug.name(v)));
        return out;
    }
    if (method.kind == UIGKind::File) {
        const ChainGraph g = load_graph_file(method.path);
        if (g.directed_edge_count() > 0)
            throw PreconditionError("UIG file must contain only undirected edges");
        auto a = g.names();
        auto b = vars;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            throw PreconditionError("UIG file vertices must match the source variables");
        UndirectedGraph out(vars);
        for (auto [u, v] : g.undirected_edges())
            out.add_edge(out.index(g.name(u)), out.index(g.name(v)));
        return out;
    }

    if (const auto* gauss = dynamic_cast<const GaussianCISource*>(&src)) {
        if (gauss->sample_size() <= p + 3)
            throw PreconditionError("full-conditional gaussian UIG needs n > p + 3");
    } else if (method.kind == UIGKind::GaussianConcentration) {
        throw PreconditionError("gaussian-concentration UIG requires a gaussian CI source");
    }
    if (dynamic_cast<const DiscreteCISource*>(&src) && p > 12)
        throw PreconditionError(
            "full-conditional discrete UIG is limited to p <= 12; supply a UIG file or oracle");

    UndirectedGraph out = UndirectedGraph::complete(vars);
    for (int u = 0; u < p; ++u)
        for (int v = u + 1; v < p; ++v) {
            std::vector<std::string> rest;
            rest.reserve(p - 2);
            for (int w = 0; w < p; ++w)
                if (w != u && w != v) rest.push_back(vars[w]);
            if (src.query(vars[u], vars[v], rest)) out.remove_edge(u, v);
        }
    return out;
}

LcdResult lcd_amp(CISource& src, const LearnConfig& cfg, const UIGMethod& method) {
    const auto order = resolve_order(src, cfg.variable_order);
    const int p = static_cast<int>(order.size());

    LcdResult r;
    r.uig = build_uig(src, method, order);
    r.tree = junction_tree(triangulate(r.uig));
    const int k = static_cast<int>(r.tree.nodes.size());

    // local skeleton per tree node, scanned in the global variable order
    std::vector<UndirectedGraph> locals;
    locals.reserve(k);
    for (const auto& node : r.tree.nodes) {
        const std::set<std::string> in(node.begin(), node.end());
        std::vector<std::string> members;
        for (const auto& name : order)
            if (in.count(name)) members.push_back(name);
        SkeletonResult local =
            skeleton_from(src, UndirectedGraph::complete(members), cfg.max_sepset_size, false);
        for (const auto& [key, s] : local.sepsets.all())
            if (!r.sepsets.contains(key.first, key.second)) r.sepsets.set(key.first, key.second, s);
        for (auto& ev : local.log.removals) r.log.removals.push_back(std::move(ev));
        r.log.max_level_reached = std::max(r.log.max_level_reached, local.log.max_level_reached);
        locals.push_back(std::move(local.graph));
    }

    // merge: an edge needs co-occurrence somewhere and survival everywhere
    std::vector<std::vector<char>> member(k, std::vector<char>(p, 0));
    for (int h = 0; h < k; ++h)
        for (const auto& name : r.tree.nodes[h]) {
            const auto it = std::find(order.begin(), order.end(), name);
            member[h][it - order.begin()] = 1;
        }
    UndirectedGraph merged(order);
    std::vector<std::pair<int, int>> strangers;  // pairs sharing no node
    for (int u = 0; u < p; ++u)
        for (int v = u + 1; v < p; ++v) {
            bool cooccur = false, deleted = false;
            for (int h = 0; h < k; ++h) {
                if (!member[h][u] || !member[h][v]) continue;
                cooccur = true;
                if (!locals[h].has_edge(locals[h].index(order[u]), locals[h].index(order[v])))
                    deleted = true;
            }
            if (cooccur && !deleted)
                merged.add_edge(u, v);
            else if (!cooccur)
                strangers.emplace_back(u, v);
        }

    // pairs sharing no tree node are separated by a tree-edge label on the
    // path between their nodes; record the first label containing neither
    std::vector<std::vector<std::pair<int, int>>> tadj(k);  // node -> (peer, edge idx)
    for (std::size_t e = 0; e < r.tree.edges.size(); ++e) {
        tadj[r.tree.edges[e].i].emplace_back(r.tree.edges[e].j, static_cast<int>(e));
        tadj[r.tree.edges[e].j].emplace_back(r.tree.edges[e].i, static_cast<int>(e));
    }
    for (auto [u, v] : strangers) {
        int nu = -1, nv = -1;
        for (int h = 0; h < k && (nu < 0 || nv < 0); ++h) {
            if (nu < 0 && member[h][u]) nu = h;
            if (nv < 0 && member[h][v]) nv = h;
        }
        if (nu < 0 || nv < 0) continue;
        std::vector<int> parent(k, -2), via(k, -1);
        std::deque<int> queue = {nu};
        parent[nu] = -1;
        while (!queue.empty()) {
            const int x = queue.front();
            queue.pop_front();
            if (x == nv) break;
            for (auto [y, e] : tadj[x])
                if (parent[y] == -2) {
                    parent[y] = x;
                    via[y] = e;
                    queue.push_back(y);
                }
        }
        std::vector<int> path;  // edge indices from nu to nv
        for (int x = nv; x != nu; x = parent[x]) path.push_back(via[x]);
        std::reverse(path.begin(), path.end());
        for (int e : path) {
            const auto& sep = r.tree.edges[e].sep;
            const bool hits = std::find(sep.begin(), sep.end(), order[u]) != sep.end() ||
                              std::find(sep.begin(), sep.end(), order[v]) != sep.end();
            if (!hits) {
                r.sepsets.set(order[u], order[v], sep);
                break;
            }
        }
    }

    // global prune over the merged skeleton
    SkeletonResult pruned = skeleton_from(src, std::move(merged), cfg.max_sepset_size, false);
    for (const auto& [key, s] : pruned.sepsets.all()) r.sepsets.set(key.first, key.second, s);
    for (auto& ev : pruned.log.removals) r.log.removals.push_back(std::move(ev));
    r.log.max_level_reached = std::max(r.log.max_level_reached, pruned.log.max_level_reached);
    r.skeleton = std::move(pruned.graph);

    r.graph = orient(r.skeleton, r.sepsets);
    r.log.query_count = src.query_count();
    return r;
}

}  // namespace ampcg
