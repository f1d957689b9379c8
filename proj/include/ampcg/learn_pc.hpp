#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ampcg/citest.hpp"
#include "ampcg/graph.hpp"

namespace ampcg {

enum class LearnVariant { Original, Stable, Conservative, StableConservative };

struct LearnConfig {
    LearnVariant variant = LearnVariant::Stable;
    double alpha = 0.01;  // carried for reporting; decisions live in the CI source
    std::vector<std::string> variable_order;  // empty = CI-source order
    std::optional<int> max_sepset_size;
};

struct RemovalEvent {
    int level = 0;  // subset size when the edge fell
    std::string u, v;  // ordered pair as scanned
    std::vector<std::string> sepset;
};

struct RunLog {
    std::vector<RemovalEvent> removals;
    int max_level_reached = 0;
    long long query_count = 0;
};

struct SkeletonResult {
    UndirectedGraph graph;
    SepSetMap sepsets;
    RunLog log;
};

// Skeleton recovery from a complete graph: at each level i, ordered pairs
// (u,v) with u adjacent to v and |[ad(u) u ad(ad(u))] \ {u,v}| >= i are
// scanned in variable-order sequence; the first size-i subset of that
// candidate set (enumerated in order-lexicographic sequence) judged
// independent removes the edge at once and records the separator.
SkeletonResult pc_skeleton(CISource& src, const LearnConfig& cfg);

// Order-independent variant: the candidate sets ad(u) u ad(ad(u)) are frozen
// per level, so in-level removals stop pair scans but never shrink the
// search spaces until the next level.
SkeletonResult stable_skeleton(CISource& src, const LearnConfig& cfg);

// The same edge-removal loop started from an arbitrary graph instead of a
// complete one; scan order is the vertex order of `start`. Used for the
// decomposition learner's local phases and its global prune.
SkeletonResult skeleton_from(CISource& src, UndirectedGraph start,
                             std::optional<int> max_sepset_size, bool stable);

enum class TripleStatus { UnambiguousTriplex, UnambiguousNonTriplex, Ambiguous };

struct TripleLabel {
    std::string x, y, z;  // y adjacent to both; x,z non-adjacent; x < z by name
    TripleStatus status = TripleStatus::Ambiguous;
};

// Conservative labeling: for each unshielded triple (x,y,z), every subset of
// ad(x) u ad(ad(x)) and of ad(z) u ad(ad(z)) up to max_size is tested; the
// triple is unambiguous only when y lies in all found separators or in none.
// No separator found also means ambiguous.
std::vector<TripleLabel> label_triples(CISource& src, const UndirectedGraph& skel,
                                       int max_size);

// Orientation happens on end-marks: a block on the u end of an edge records
// that the edge cannot point toward u. Afterwards an edge with exactly one
// blocked end becomes directed away from the block; otherwise it stays
// undirected.
//
// Rule pattern table (transcribed from a published figure of four rules;
// the exact side conditions there are graphical, so each entry notes the
// reading used; all four placements are provably sound for recovering a
// chain graph from its skeleton and separators):
//   R1  unshielded (a,b,c) decided a triplex at b
//         -> block the a end of a-b and the c end of c-b.
//   R2  unshielded (a,b,c) decided a non-triplex, a end of a-b blocked
//         -> block the b end of b-c.  (Blocked means blocked, whether or not
//            the other end is too: the figure's circle marks are wildcards.)
//   R3  a-b blocked at a, b-c blocked at b, edge a-c present
//         -> block the a end of a-c (else c -> a closes a partially
//            directed triangle).
//   R4  a chain a => x1 => ... => xk => c of edges each blocked at the end
//         nearer a (k >= 1), edge a-c present -> block the a end of a-c
//         (general cycle closure; R3 is the k=1 case, kept separate to match
//         the published rule count).
//
// Without labels, "decided" reads the recorded separator of (a,c): absent
// from it = triplex, present = non-triplex, no record = undecided. With
// labels (conservative variants), only unambiguous labels fire R1/R2.
//
// The rules are sound but not complete: replacing marks edge by edge can
// leave a partially directed cycle even when every mark is correct. A final
// completion pass therefore directs, for each remaining partially directed
// cycle, one of its undirected edges against the cycle (name-wise first
// choice that violates no block and flips no decided triple, with follow-up
// directions to keep decided non-triplexes intact). With consistent
// separator inputs the result is a chain graph with exactly the decided
// triplexes; contradictory sample-based decisions may leave an unrepairable
// cycle, in which case the best effort is returned.
ChainGraph orient(const UndirectedGraph& skeleton, const SepSetMap& sepsets,
                  const std::vector<TripleLabel>* labels = nullptr);

// Canonical member of a triplex equivalence class: the skeleton re-oriented
// by the engine above from the graph's own triplex set alone. Graphs with
// the same skeleton and the same triplexes map to the identical output, so
// a distance between representatives compares equivalence classes rather
// than whichever members two learners happened to emit. The skeleton is
// preserved exactly.
ChainGraph triplex_representative(const ChainGraph& g);

struct LearnResult {
    ChainGraph graph;
    SkeletonResult skeleton;
    std::vector<TripleLabel> labels;  // conservative variants only
};

LearnResult learn(CISource& src, const LearnConfig& cfg);

}  // namespace ampcg
