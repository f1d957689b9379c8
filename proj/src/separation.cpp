#include "ampcg/separation.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <functional>

namespace ampcg {

namespace {

std::vector<int> to_indices(const ChainGraph& g, const std::vector<std::string>& names) {
    std::vector<int> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(g.index(n));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void validate_query(const ChainGraph& g, const SeparationQuery& q, std::vector<int>& x,
                    std::vector<int>& y, std::vector<int>& z) {
    x = to_indices(g, q.x);
    y = to_indices(g, q.y);
    z = to_indices(g, q.z);
    if (x.empty() || y.empty())
        throw PreconditionError("separation query requires non-empty X and Y");
    std::vector<char> seen(g.size(), 0);
    for (int v : x) seen[v] = 1;
    for (int v : y) {
        if (seen[v]) throw PreconditionError("separation query sets must be disjoint");
        seen[v] = 1;
    }
    for (int v : z) {
        if (seen[v]) throw PreconditionError("separation query sets must be disjoint");
    }
}

std::vector<char> membership(int n, const std::vector<int>& xs) {
    std::vector<char> in(n, 0);
    for (int x : xs) in[x] = 1;
    return in;
}

bool ug_connected_avoiding(const UndirectedGraph& h, const std::vector<int>& starts,
                           const std::vector<char>& target, const std::vector<char>& avoid) {
    std::vector<char> seen(h.size(), 0);
    std::deque<int> queue;
    for (int s : starts) {
        if (target[s]) return true;
        if (!avoid[s] && !seen[s]) {
            seen[s] = 1;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop_front();
        for (int w : h.neighbors(v)) {
            if (seen[w] || avoid[w]) continue;
            if (target[w]) return true;
            seen[w] = 1;
            queue.push_back(w);
        }
    }
    return false;
}

}  // namespace

bool p_separated_aug(const ChainGraph& g, const SeparationQuery& q) {
    std::vector<int> x, y, z;
    validate_query(g, q, x, y, z);
    std::vector<int> all = x;
    all.insert(all.end(), y.begin(), y.end());
    all.insert(all.end(), z.begin(), z.end());
    const ChainGraph ext = extended_subgraph(g, all);
    const UndirectedGraph h = augment(ext);

    std::vector<int> hx;
    for (int v : x) hx.push_back(h.index(g.name(v)));
    std::vector<char> target(h.size(), 0), avoid(h.size(), 0);
    for (int v : y) target[h.index(g.name(v))] = 1;
    for (int v : z) avoid[h.index(g.name(v))] = 1;
    return !ug_connected_avoiding(h, hx, target, avoid);
}

namespace {

enum class EndMark : unsigned char { Arrow, Tail, Line };

EndMark mark_at(const ChainGraph& g, int v, int other) {
    if (g.has_directed(other, v)) return EndMark::Arrow;
    if (g.has_directed(v, other)) return EndMark::Tail;
    return EndMark::Line;
}

}  // namespace

bool p_separated_pathwise(const ChainGraph& g, const SeparationQuery& q) {
    std::vector<int> x, y, z;
    validate_query(g, q, x, y, z);
    const auto an_z = membership(g.size(), ancestral_closure(g, z));
    const auto in_z = membership(g.size(), z);
    const auto in_y = membership(g.size(), y);

    std::vector<char> parent_escapes(g.size(), 0);
    for (int v = 0; v < g.size(); ++v)
        for (int p : g.pa(v))
            if (!in_z[p]) {
                parent_escapes[v] = 1;
                break;
            }

    const auto open_through = [&](int b, EndMark in, EndMark out) {
        const bool has_tail = (in == EndMark::Tail || out == EndMark::Tail);
        const bool both_lines = (in == EndMark::Line && out == EndMark::Line);
        if (!has_tail && !both_lines) return an_z[b] != 0;  // triplex node
        if (!in_z[b]) return true;
        return both_lines && parent_escapes[b] != 0;
    };

    // States are (vertex, end-mark of the entering edge at that vertex).
    std::vector<std::array<char, 3>> seen(g.size(), {0, 0, 0});
    std::deque<std::pair<int, EndMark>> queue;
    const auto visit = [&](int w, EndMark m) -> bool {
        if (in_y[w]) return true;
        auto& flag = seen[w][static_cast<int>(m)];
        if (!flag) {
            flag = 1;
            queue.emplace_back(w, m);
        }
        return false;
    };

    for (int s : x)
        for (int w : g.ad(s))
            if (visit(w, mark_at(g, w, s))) return false;

    while (!queue.empty()) {
        auto [b, in] = queue.front();
        queue.pop_front();
        for (int w : g.ad(b)) {
            if (!open_through(b, in, mark_at(g, b, w))) continue;
            if (visit(w, mark_at(g, w, b))) return false;
        }
    }
    return true;
}

UndirectedGraph augmented_anterior_graph(const ChainGraph& g,
                                         const std::vector<std::string>& around) {
    const auto ant = anterior(g, to_indices(g, around));
    return augment(induced_subgraph(g, ant));
}

namespace {

// Localized search context: the induced subgraph on the anterior set of the
// query endpoints answers every query whose conditioning set stays inside
// that anterior set, and every minimal separator does.
struct SeparatorSearch {
    ChainGraph h;
    std::vector<std::string> xs, ys;
    std::vector<std::string> universe;  // anterior set minus endpoints, name-sorted

    bool separated(const std::vector<std::string>& z) const {
        return p_separated_aug(h, {xs, ys, z});
    }
};

SeparatorSearch make_search(const ChainGraph& g, const std::vector<std::string>& xs,
                            const std::vector<std::string>& ys) {
    std::vector<int> both = to_indices(g, xs);
    const auto yi = to_indices(g, ys);
    both.insert(both.end(), yi.begin(), yi.end());
    SeparatorSearch search;
    search.xs = xs;
    search.ys = ys;
    const auto ant = anterior(g, both);
    search.h = induced_subgraph(g, ant);
    const auto in_endpoint = membership(g.size(), both);
    for (int w : ant)
        if (!in_endpoint[w]) search.universe.push_back(g.name(w));
    std::sort(search.universe.begin(), search.universe.end());
    return search;
}

// Visit the k-element subsets of `pool` in lexicographic order until `vis`
// returns true; the pool must be sorted.
bool any_combination(const std::vector<std::string>& pool, int k,
                     const std::function<bool(const std::vector<std::string>&)>& vis) {
    const int n = static_cast<int>(pool.size());
    if (k > n) return false;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::vector<std::string> subset(k);
    while (true) {
        for (int i = 0; i < k; ++i) subset[i] = pool[idx[i]];
        if (vis(subset)) return true;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// Smallest separator drawn from `pool`, scanning sizes 0..pool.size() and
// each size lexicographically. A minimum-cardinality separator is always
// inclusion-minimal.
std::optional<std::vector<std::string>> smallest_separator(const SeparatorSearch& search,
                                                           const std::vector<std::string>& pool) {
    std::optional<std::vector<std::string>> found;
    for (int k = 0; k <= static_cast<int>(pool.size()) && !found; ++k)
        any_combination(pool, k, [&](const std::vector<std::string>& z) {
            if (!search.separated(z)) return false;
            found = z;
            return true;
        });
    return found;
}

void require_non_adjacent(const ChainGraph& g, const std::string& u, const std::string& v) {
    const int gu = g.index(u), gv = g.index(v);
    if (gu == gv) throw PreconditionError("u and v must be distinct");
    if (g.adjacent(gu, gv)) throw PreconditionError(u + " and " + v + " are adjacent");
}

}  // namespace

bool is_minimal_separator(const ChainGraph& g, const std::string& u, const std::string& v,
                          const std::vector<std::string>& z) {
    if (!p_separated_aug(g, {{u}, {v}, z}))
        throw PreconditionError("set does not separate " + u + " from " + v);
    const auto search = make_search(g, {u}, {v});
    for (const auto& name : z)
        if (!std::binary_search(search.universe.begin(), search.universe.end(), name))
            return false;  // a separator leaving the anterior set is never minimal
    std::vector<std::string> zs = z;
    std::sort(zs.begin(), zs.end());
    zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
    for (int k = 0; k < static_cast<int>(zs.size()); ++k)
        if (any_combination(zs, k, [&](const std::vector<std::string>& sub) {
                return search.separated(sub);
            }))
            return false;
    return true;
}

std::vector<std::string> find_minimal_separator(const ChainGraph& g, const std::string& u,
                                                const std::string& v) {
    require_non_adjacent(g, u, v);
    const auto search = make_search(g, {u}, {v});
    auto found = smallest_separator(search, search.universe);
    if (!found) throw PreconditionError(u + " and " + v + " cannot be separated");
    return *found;
}

std::optional<std::vector<std::string>> restricted_separator(const ChainGraph& g,
                                                             const std::string& u,
                                                             const std::string& v,
                                                             const std::vector<std::string>& s) {
    for (const auto& name : s)
        if (name == u || name == v)
            throw PreconditionError("candidate separator must not contain the endpoints");
    require_non_adjacent(g, u, v);
    const auto search = make_search(g, {u}, {v});
    std::vector<std::string> pool;
    for (const auto& name : s) {
        g.index(name);  // unknown names are an error even when outside the anterior set
        if (std::binary_search(search.universe.begin(), search.universe.end(), name))
            pool.push_back(name);
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    if (search.separated(pool)) return pool;
    // Conditioning is not monotone, so a subset may separate where the whole
    // pool fails; fall back to the exact scan.
    return smallest_separator(search, pool);
}

std::optional<std::vector<std::string>> restricted_minimal_separator(
    const ChainGraph& g, const std::string& u, const std::string& v,
    const std::vector<std::string>& s) {
    for (const auto& name : s)
        if (name == u || name == v)
            throw PreconditionError("candidate separator must not contain the endpoints");
    require_non_adjacent(g, u, v);
    const auto search = make_search(g, {u}, {v});
    std::vector<std::string> pool;
    for (const auto& name : s) {
        g.index(name);
        if (std::binary_search(search.universe.begin(), search.universe.end(), name))
            pool.push_back(name);
    }
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    return smallest_separator(search, pool);
}

std::vector<std::string> minimal_separator_sets(const ChainGraph& g,
                                                const std::vector<std::string>& xs,
                                                const std::vector<std::string>& ys) {
    if (xs.empty() || ys.empty())
        throw PreconditionError("minimal_separator_sets requires non-empty X and Y");
    const auto xi = to_indices(g, xs);
    const auto yi = to_indices(g, ys);
    const auto in_y = membership(g.size(), yi);
    for (int v : xi) {
        if (in_y[v]) throw PreconditionError("X and Y must be disjoint");
        for (int w : yi)
            if (g.adjacent(v, w))
                throw PreconditionError(g.name(v) + " and " + g.name(w) + " are adjacent");
    }
    const auto search = make_search(g, xs, ys);
    auto found = smallest_separator(search, search.universe);
    if (!found) throw PreconditionError("X and Y cannot be separated");
    return *found;
}

std::vector<std::vector<std::string>> enumerate_minimal_separators(const ChainGraph& g,
                                                                   const std::string& u,
                                                                   const std::string& v) {
    require_non_adjacent(g, u, v);
    const auto search = make_search(g, {u}, {v});
    std::vector<std::vector<std::string>> minimal;
    for (int k = 0; k <= static_cast<int>(search.universe.size()); ++k)
        any_combination(search.universe, k, [&](const std::vector<std::string>& z) {
            if (!search.separated(z)) return false;
            for (const auto& m : minimal)
                if (std::includes(z.begin(), z.end(), m.begin(), m.end())) return false;
            minimal.push_back(z);
            return false;  // keep scanning: we want all of them
        });
    return minimal;
}

}  // namespace ampcg
