#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "ampcg/errors.hpp"

namespace ampcg {

// Mixed graph with directed and undirected edges over named vertices.
// Vertex indices follow order of first appearance, which doubles as the
// default variable ordering for the order-sensitive algorithms. The structure
// admits any mixed graph; chain-graph validity is a predicate (is_amp_cg),
// not a construction invariant, because learners on noisy data may emit
// graphs outside the class.
class ChainGraph {
  public:
    ChainGraph() = default;
    explicit ChainGraph(const std::vector<std::string>& names);

    int add_vertex(const std::string& name);
    bool has_vertex(const std::string& name) const { return index_.count(name) > 0; }
    int index(const std::string& name) const;
    const std::string& name(int v) const { return names_[v]; }
    const std::vector<std::string>& names() const { return names_; }
    int size() const { return static_cast<int>(names_.size()); }

    // Both edge insertions reject self loops, duplicates and conflicts
    // (u->v plus v->u, or a directed and an undirected edge on one pair).
    void add_undirected(int u, int v);
    void add_directed(int u, int v);  // u -> v
    void add_undirected(const std::string& u, const std::string& v);
    void add_directed(const std::string& u, const std::string& v);

    bool has_undirected(int u, int v) const { return und_[u][v] != 0; }
    bool has_directed(int u, int v) const { return dir_[u][v] != 0; }
    bool adjacent(int u, int v) const {
        return und_[u][v] != 0 || dir_[u][v] != 0 || dir_[v][u] != 0;
    }

    // Neighbor accessors return sorted vertex indices.
    std::vector<int> ne(int v) const;          // undirected neighbors
    std::vector<int> pa(int v) const;          // parents (u with u -> v)
    std::vector<int> ch(int v) const;          // children (w with v -> w)
    std::vector<int> ad(int v) const;          // all adjacents
    std::vector<int> bd(int v) const;          // boundary: pa united with ne

    std::vector<std::pair<int, int>> undirected_edges() const;  // u < v
    std::vector<std::pair<int, int>> directed_edges() const;    // (tail, head)
    int edge_count() const { return undirected_count_ + directed_count_; }
    int undirected_edge_count() const { return undirected_count_; }
    int directed_edge_count() const { return directed_count_; }

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<char>> und_;
    std::vector<std::vector<char>> dir_;
    int undirected_count_ = 0;
    int directed_count_ = 0;
};

// Undirected graph sharing the vertex-naming scheme of ChainGraph. Supports
// edge removal, which the constraint-based learners rely on.
class UndirectedGraph {
  public:
    UndirectedGraph() = default;
    explicit UndirectedGraph(const std::vector<std::string>& names);

    static UndirectedGraph complete(const std::vector<std::string>& names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int v) const { return names_[v]; }
    const std::vector<std::string>& names() const { return names_; }
    int index(const std::string& name) const;
    bool has_vertex(const std::string& name) const { return index_.count(name) > 0; }

    void add_edge(int u, int v);
    void remove_edge(int u, int v);
    bool has_edge(int u, int v) const { return adj_[u][v] != 0; }

    std::vector<int> neighbors(int v) const;
    std::vector<std::pair<int, int>> edges() const;  // u < v
    int edge_count() const { return edge_count_; }

    bool operator==(const UndirectedGraph& other) const;

  private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<char>> adj_;
    int edge_count_ = 0;
};

// Text format: one item per line. `a -> b` directed, `a -- b` undirected,
// `node a` declares an isolated vertex, `#` starts a comment. Vertex order is
// order of first appearance. Serialization emits `node` lines for isolated
// vertices first, then all edges sorted lexicographically by endpoint names
// (undirected endpoints are written in sorted order).
ChainGraph parse_graph(std::istream& in);
ChainGraph parse_graph_string(const std::string& text);
ChainGraph load_graph_file(const std::string& path);
std::string serialize_graph(const ChainGraph& g);
void save_graph_file(const ChainGraph& g, const std::string& path);

}  // namespace ampcg
