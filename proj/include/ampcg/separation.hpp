#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ampcg/graph.hpp"
#include "ampcg/graph_ops.hpp"

namespace ampcg {

// Vertex sets in separation queries are given by name; X and Y must be
// non-empty and X, Y, Z pairwise disjoint (violation raises
// PreconditionError).
struct SeparationQuery {
    std::vector<std::string> x;
    std::vector<std::string> y;
    std::vector<std::string> z;
};

// Augmentation criterion: X and Z-avoiding paths in the augmented extended
// subgraph over X u Y u Z never reach Y.
bool p_separated_aug(const ChainGraph& g, const SeparationQuery& q);

// Pathwise criterion: no Z-open chain joins X and Y. A chain node with
// an arrowhead on some incident chain edge and no tail is a triplex node and
// passes iff it lies in the ancestral closure of Z; any other interior node
// blocks when it lies in Z, except a node B between two undirected chain
// edges, which stays open if some parent of B escapes Z. Implemented as a
// reachability search over (vertex, entering end-mark) states.
bool p_separated_pathwise(const ChainGraph& g, const SeparationQuery& q);

// Augmentation of the subgraph induced by the anterior set of the query
// vertices. Undirected separation in this graph implies p-separation (it is
// an undirected independence graph), but not conversely: a flag whose head
// lies in the anterior set yet outside the ancestral closure of a concrete
// query contributes a link here that the query graph does not have. The
// separator searches below therefore certify candidates with p_separated_aug
// instead of trusting this graph alone.
UndirectedGraph augmented_anterior_graph(const ChainGraph& g,
                                         const std::vector<std::string>& around);

// All separator searches rely on two localization properties: a query with
// Z inside ant(X u Y) has the same answer in the subgraph induced by that
// anterior set, and every inclusion-minimal separator lies inside it. The
// candidate space is thus the anterior set minus the endpoints, scanned in
// size-then-lexicographic order with exact p_separated_aug checks, so each
// search costs O(C(|ant|, k)) queries where k is the answer's size.

// True iff z separates u from v and no proper subset does. Raises
// PreconditionError when z fails to separate at all.
bool is_minimal_separator(const ChainGraph& g, const std::string& u, const std::string& v,
                          const std::vector<std::string>& z);

// Smallest (hence inclusion-minimal) separator for u, v; ties broken
// lexicographically. Raises PreconditionError when none exists (in
// particular when u, v are adjacent).
std::vector<std::string> find_minimal_separator(const ChainGraph& g, const std::string& u,
                                                const std::string& v);

// Separator contained in s, if one exists. The restriction of s to the
// anterior set is tried first and returned verbatim when it separates; when
// it does not, smaller subsets are still scanned, because conditioning is
// not monotone in chain graphs. nullopt means no subset of s separates.
std::optional<std::vector<std::string>> restricted_separator(const ChainGraph& g,
                                                             const std::string& u,
                                                             const std::string& v,
                                                             const std::vector<std::string>& s);

// Smallest separator contained in s (minimal among subsets of s), or nullopt
// when no subset of s separates.
std::optional<std::vector<std::string>> restricted_minimal_separator(
    const ChainGraph& g, const std::string& u, const std::string& v,
    const std::vector<std::string>& s);

// Smallest separator between disjoint non-adjacent sets X and Y. Raises
// PreconditionError when X and Y are adjacent or inseparable.
std::vector<std::string> minimal_separator_sets(const ChainGraph& g,
                                                const std::vector<std::string>& xs,
                                                const std::vector<std::string>& ys);

// Every inclusion-minimal separator between u and v: the anterior candidate
// space is scanned exhaustively in size order, keeping each separator that
// contains no previously kept one. Result sorted by size, then
// lexicographically. Empty when u and v cannot be separated; raises
// PreconditionError when they are adjacent. Exponential in the size of the
// anterior set; intended for small neighborhoods.
std::vector<std::vector<std::string>> enumerate_minimal_separators(const ChainGraph& g,
                                                                   const std::string& u,
                                                                   const std::string& v);

}  // namespace ampcg
