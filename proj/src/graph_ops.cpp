#include "ampcg/graph_ops.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace ampcg {

namespace {

std::vector<char> membership(int n, const std::vector<int>& xs) {
    std::vector<char> in(n, 0);
    for (int x : xs) in[x] = 1;
    return in;
}

std::vector<int> to_sorted_vertices(const std::vector<char>& in) {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(in.size()); ++v)
        if (in[v]) out.push_back(v);
    return out;
}

}  // namespace

ChainComponents chain_components(const ChainGraph& g) {
    const int n = g.size();
    ChainComponents cc;
    cc.component_of.assign(n, -1);
    for (int s = 0; s < n; ++s) {
        if (cc.component_of[s] != -1) continue;
        const int idx = static_cast<int>(cc.components.size());
        std::vector<int> comp;
        std::deque<int> queue{s};
        cc.component_of[s] = idx;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            comp.push_back(v);
            for (int u : g.ne(v)) {
                if (cc.component_of[u] == -1) {
                    cc.component_of[u] = idx;
                    queue.push_back(u);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        cc.components.push_back(std::move(comp));
    }
    return cc;
}

bool is_amp_cg(const ChainGraph& g) {
    const auto cc = chain_components(g);
    const int k = static_cast<int>(cc.components.size());
    std::vector<std::set<int>> succ(k);
    for (auto [u, v] : g.directed_edges()) {
        const int cu = cc.component_of[u];
        const int cv = cc.component_of[v];
        if (cu == cv) return false;
        succ[cu].insert(cv);
    }
    // Kahn topological sort of the component quotient.
    std::vector<int> indeg(k, 0);
    for (int c = 0; c < k; ++c)
        for (int d : succ[c]) ++indeg[d];
    std::deque<int> queue;
    for (int c = 0; c < k; ++c)
        if (indeg[c] == 0) queue.push_back(c);
    int seen = 0;
    while (!queue.empty()) {
        const int c = queue.front();
        queue.pop_front();
        ++seen;
        for (int d : succ[c])
            if (--indeg[d] == 0) queue.push_back(d);
    }
    return seen == k;
}

std::vector<int> ancestral_closure(const ChainGraph& g, const std::vector<int>& a) {
    std::vector<char> in = membership(g.size(), a);
    std::deque<int> queue(a.begin(), a.end());
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int u : g.pa(v)) {
            if (!in[u]) {
                in[u] = 1;
                queue.push_back(u);
            }
        }
    }
    return to_sorted_vertices(in);
}

std::vector<int> anterior(const ChainGraph& g, const std::vector<int>& a) {
    std::vector<char> in = membership(g.size(), a);
    std::deque<int> queue(a.begin(), a.end());
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int u : g.pa(v)) {
            if (!in[u]) {
                in[u] = 1;
                queue.push_back(u);
            }
        }
        for (int u : g.ne(v)) {
            if (!in[u]) {
                in[u] = 1;
                queue.push_back(u);
            }
        }
    }
    return to_sorted_vertices(in);
}

std::vector<int> component_closure(const ChainGraph& g, const std::vector<int>& a) {
    const auto cc = chain_components(g);
    std::vector<char> take(cc.components.size(), 0);
    for (int v : a) take[cc.component_of[v]] = 1;
    std::vector<char> in(g.size(), 0);
    for (int v = 0; v < g.size(); ++v)
        if (take[cc.component_of[v]]) in[v] = 1;
    return to_sorted_vertices(in);
}

ChainGraph extended_subgraph(const ChainGraph& g, const std::vector<int>& a) {
    const auto an = ancestral_closure(g, a);
    const auto co = component_closure(g, an);
    const auto in_an = membership(g.size(), an);
    const auto in_co = membership(g.size(), co);

    ChainGraph out;
    for (int v = 0; v < g.size(); ++v)
        if (in_co[v]) out.add_vertex(g.name(v));
    for (auto [u, v] : g.directed_edges())
        if (in_an[u] && in_an[v]) out.add_directed(g.name(u), g.name(v));
    for (auto [u, v] : g.undirected_edges()) {
        if ((in_an[u] && in_an[v]) || (in_co[u] && in_co[v]))
            out.add_undirected(g.name(u), g.name(v));
    }
    return out;
}

ChainGraph induced_subgraph(const ChainGraph& g, const std::vector<int>& vs) {
    const auto in = membership(g.size(), vs);
    ChainGraph out;
    for (int v = 0; v < g.size(); ++v)
        if (in[v]) out.add_vertex(g.name(v));
    for (auto [u, v] : g.directed_edges())
        if (in[u] && in[v]) out.add_directed(g.name(u), g.name(v));
    for (auto [u, v] : g.undirected_edges())
        if (in[u] && in[v]) out.add_undirected(g.name(u), g.name(v));
    return out;
}

std::vector<Triplex> triplexes(const ChainGraph& g) {
    std::vector<Triplex> out;
    for (int y = 0; y < g.size(); ++y) {
        const auto ady = g.ad(y);
        for (std::size_t i = 0; i < ady.size(); ++i) {
            for (std::size_t j = i + 1; j < ady.size(); ++j) {
                const int x = ady[i];
                const int z = ady[j];
                if (g.adjacent(x, z)) continue;
                const bool x_into = g.has_directed(x, y) || g.has_undirected(x, y);
                const bool z_into = g.has_directed(z, y) || g.has_undirected(z, y);
                const bool some_arrow = g.has_directed(x, y) || g.has_directed(z, y);
                if (x_into && z_into && some_arrow) out.push_back({x, y, z});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Flag> flags(const ChainGraph& g) {
    std::vector<Flag> out;
    for (int y = 0; y < g.size(); ++y) {
        for (int x : g.pa(y)) {
            for (int z : g.ne(y)) {
                if (x != z && !g.adjacent(x, z)) out.push_back({x, y, z});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BiFlag> bi_flags(const ChainGraph& g) {
    std::vector<BiFlag> out;
    for (auto [a, b] : g.undirected_edges()) {
        for (int x : g.pa(a)) {
            for (int y : g.pa(b)) {
                if (x != y) out.push_back({x, a, b, y});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

UndirectedGraph skeleton(const ChainGraph& g) {
    UndirectedGraph out(g.names());
    for (auto [u, v] : g.undirected_edges()) out.add_edge(u, v);
    for (auto [u, v] : g.directed_edges()) out.add_edge(u, v);
    return out;
}

UndirectedGraph augment(const ChainGraph& g) {
    UndirectedGraph out = skeleton(g);
    for (const auto& t : triplexes(g)) out.add_edge(t.x, t.z);
    for (const auto& f : bi_flags(g))
        if (!out.has_edge(f.x, f.y)) out.add_edge(f.x, f.y);
    return out;
}

bool triplex_equivalent(const ChainGraph& a, const ChainGraph& b) {
    if (a.size() != b.size()) return false;
    std::vector<std::string> na = a.names(), nb = b.names();
    std::sort(na.begin(), na.end());
    std::sort(nb.begin(), nb.end());
    if (na != nb) return false;

    // Map b's indices into a's.
    std::vector<int> b_to_a(b.size());
    for (int v = 0; v < b.size(); ++v) b_to_a[v] = a.index(b.name(v));

    const auto sk_a = skeleton(a);
    for (int u = 0; u < b.size(); ++u)
        for (int v = u + 1; v < b.size(); ++v) {
            const bool eb = b.adjacent(u, v);
            const bool ea = sk_a.has_edge(b_to_a[u], b_to_a[v]);
            if (ea != eb) return false;
        }

    auto ta = triplexes(a);
    std::vector<Triplex> tb;
    for (const auto& t : triplexes(b)) {
        int x = b_to_a[t.x], y = b_to_a[t.y], z = b_to_a[t.z];
        if (z < x) std::swap(x, z);
        tb.push_back({x, y, z});
    }
    std::sort(tb.begin(), tb.end());
    return ta == tb;
}

}  // namespace ampcg
