#pragma once

#include <string>
#include <vector>

#include "ampcg/citest.hpp"
#include "ampcg/graph.hpp"
#include "ampcg/learn_pc.hpp"

namespace ampcg {

// Junction tree used as a separation oracle over vertex groups: removing an
// edge splits the node sets into two halves whose variables (minus the
// separator) are independent given the separator.
struct SeparationTree {
    struct Edge {
        int i = 0, j = 0;
        std::vector<std::string> sep;  // intersection of nodes i and j, sorted
    };
    std::vector<std::vector<std::string>> nodes;  // each sorted by name
    std::vector<Edge> edges;
    std::string to_json() const;
};

enum class UIGKind {
    GaussianConcentration,  // zero partial correlation given all others
    FullConditional,        // source-agnostic test against all others
    Oracle,                 // adjacency in the augmented reference graph
    File,                   // pre-built undirected graph from disk
};

struct UIGMethod {
    UIGKind kind = UIGKind::FullConditional;
    std::string path;  // File only
};

// Complete graph minus pairs independent given everything else. The vertex
// sequence of the result follows `order` (empty = source order).
// Gaussian sources require n > p + 3; discrete full-conditional testing is
// limited to p <= 12 (beyond that supply a file or an oracle).
UndirectedGraph build_uig(CISource& src, const UIGMethod& method,
                          const std::vector<std::string>& order = {});

// Chordal supergraph via greedy elimination: each step removes the vertex
// whose remaining neighborhood needs the fewest fill edges (ties broken by
// lowest index) and completes that neighborhood. Simplicial vertices cost
// zero, so chordal inputs come back unchanged. Quadratic per step; intended
// for moderate vertex counts.
UndirectedGraph triangulate(const UndirectedGraph& g);

// Maximal cliques of a chordal graph joined by a maximum-separator-weight
// spanning tree (ties: larger separator first, then lower node index pair).
// Nodes are listed in lexicographic order. Disconnected inputs are joined by
// empty separators so the result is always one tree.
SeparationTree junction_tree(const UndirectedGraph& chordal);

struct LcdResult {
    ChainGraph graph;
    UndirectedGraph uig;
    SeparationTree tree;
    UndirectedGraph skeleton;
    SepSetMap sepsets;
    RunLog log;
};

// Decomposition learner: UIG -> triangulation -> separation tree; a local
// skeleton phase inside every tree node; a merge that keeps an edge only if
// its endpoints co-occur somewhere and no local phase deleted it; tree-edge
// separators recorded for pairs never sharing a node; a global prune (the
// plain skeleton loop started from the merged graph); shared orientation.
LcdResult lcd_amp(CISource& src, const LearnConfig& cfg, const UIGMethod& method);

}  // namespace ampcg
