#pragma once

#include <vector>

#include "ampcg/graph.hpp"

namespace ampcg {

// Triplex ({x, z}, y): an induced x -> y -- z, x -> y <- z or x -- y <- z
// with x and z non-adjacent. Canonical form keeps x < z.
struct Triplex {
    int x;
    int y;  // middle vertex
    int z;
    friend bool operator==(const Triplex&, const Triplex&) = default;
    friend auto operator<=>(const Triplex&, const Triplex&) = default;
};

// Flag: induced x -> y -- z with x and z non-adjacent (one of the triplex
// shapes, exposed separately; the augmentation itself only consumes triplexes
// and bi-flags).
struct Flag {
    int x;
    int y;
    int z;
    friend bool operator==(const Flag&, const Flag&) = default;
    friend auto operator<=>(const Flag&, const Flag&) = default;
};

// Bi-flag: x -> a, y -> b, a -- b present in the subgraph induced by
// {x, a, b, y}, with x != y. Canonical form keeps a < b.
struct BiFlag {
    int x;
    int a;
    int b;
    int y;
    friend bool operator==(const BiFlag&, const BiFlag&) = default;
    friend auto operator<=>(const BiFlag&, const BiFlag&) = default;
};

struct ChainComponents {
    std::vector<std::vector<int>> components;  // each sorted; ordered by least member
    std::vector<int> component_of;             // vertex -> component index
};

// Connected components of the undirected part (directed edges deleted).
ChainComponents chain_components(const ChainGraph& g);

// True iff no partially directed cycle exists: no directed edge joins two
// vertices of one chain component and the component quotient is acyclic.
bool is_amp_cg(const ChainGraph& g);

// A together with everything reachable into A along directed edges only.
std::vector<int> ancestral_closure(const ChainGraph& g, const std::vector<int>& a);

// Anterior set: A together with everything that reaches A along chains whose
// edges are undirected or directed toward A.
std::vector<int> anterior(const ChainGraph& g, const std::vector<int>& a);

// Union of the chain components that intersect A.
std::vector<int> component_closure(const ChainGraph& g, const std::vector<int>& a);

// Extended subgraph used by the augmentation separation criterion: all edges
// of g inside the ancestral closure of A, plus the undirected edges of g
// inside the component closure of that ancestral closure. Vertex names are
// preserved; vertex order follows g.
ChainGraph extended_subgraph(const ChainGraph& g, const std::vector<int>& a);

// Induced subgraph on a vertex subset, preserving names and relative order.
ChainGraph induced_subgraph(const ChainGraph& g, const std::vector<int>& vs);

std::vector<Triplex> triplexes(const ChainGraph& g);
std::vector<Flag> flags(const ChainGraph& g);
std::vector<BiFlag> bi_flags(const ChainGraph& g);

// Augmented graph: the skeleton plus an edge joining the endpoints of every
// triplex and an edge joining x and y of every bi-flag; orientation dropped.
UndirectedGraph augment(const ChainGraph& g);

UndirectedGraph skeleton(const ChainGraph& g);

// Same vertex names, same skeleton, same triplex set (compared by name).
// This is exactly Markov equivalence for AMP chain graphs.
bool triplex_equivalent(const ChainGraph& a, const ChainGraph& b);

}  // namespace ampcg
