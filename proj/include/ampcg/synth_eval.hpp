#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ampcg/citest.hpp"
#include "ampcg/graph.hpp"
#include "ampcg/linalg.hpp"

namespace ampcg {

struct GenConfig {
    int p = 10;
    double expected_degree = 2.0;  // edge probability is expected_degree / (p - 1)
    std::uint64_t seed = 0;
};

// Random chain graph: every vertex pair gets an edge independently with
// probability expected_degree/(p-1); a uniformly drawn count k of equal-length
// vertex intervals forms the chain components; within-interval edges stay
// undirected, cross-interval edges point from the earlier vertex to the later.
ChainGraph random_amp_cg(const GenConfig& cfg);

// Block-recursive Gaussian model over a chain graph: each component tau
// regresses linearly on its parent set (coefficients drawn from +-[0.5, 1.5])
// and adds correlated noise whose concentration matrix has unit diagonal,
// +-[0.1, 0.4] entries exactly at the component's undirected edges, and
// off-diagonals rescaled for strict diagonal dominance.
struct GaussianCGModel {
    struct Component {
        std::vector<int> vertices;  // global indices, ascending
        std::vector<int> parents;   // global indices, ascending
        Matrix b;                   // |vertices| x |parents| regression weights
        Matrix sigma;               // noise covariance within the component
    };
    ChainGraph graph;
    std::vector<Component> components;  // in quotient topological order
};

GaussianCGModel parametrize(const ChainGraph& g, std::uint64_t seed);

Dataset sample(const GaussianCGModel& model, int n, std::uint64_t seed);

// Joint covariance implied by the model (components composed recursively).
Matrix implied_covariance(const GaussianCGModel& model);

struct MetricsReport {
    double tpr = 0.0, fpr = 0.0, tdr = 0.0, acc = 0.0;
    long long shd = 0;
    long long query_count = 0;
    long long elapsed_ms = 0;
};

// Skeleton-based rates plus a structural Hamming distance that charges one
// per vertex pair for a missing or extra edge and one for an orientation
// mismatch on a shared edge. Empty denominators resolve vacuously:
// no true edges -> tpr 1, no gaps -> fpr 0, nothing learned -> tdr 1.
MetricsReport metrics(const ChainGraph& learned, const ChainGraph& truth);

struct BenchConfig {
    std::vector<int> p_values = {10};
    std::vector<int> n_values = {1000};
    std::vector<double> degree_values = {2.0};
    std::vector<double> alpha_values = {0.01};
    // learners by name: pc, stable, conservative, stable-conservative, lcd,
    // plus the baseline "oracle" that returns the generating graph itself
    std::vector<std::string> algos = {"stable"};
    int reps = 10;
    std::uint64_t seed = 0;
    int threads = 1;
    bool timings = false;  // when false every elapsed_ms is reported as 0
};

struct BenchRow {
    int p = 0;
    int n = 0;
    double degree = 0.0;
    double alpha = 0.0;
    std::string algo;
    int rep = 0;
    MetricsReport report;
    bool failed = false;
    std::string error;
};

// Full grid x reps x algos sweep. Every repetition owns derived RNG streams
// and all learners in one repetition see the same dataset, so reports are
// identical for any thread count.
std::vector<BenchRow> benchmark(const BenchConfig& cfg);

std::string bench_rows_json(const std::vector<BenchRow>& rows);    // one object per line
std::string bench_summary_csv(const std::vector<BenchRow>& rows);  // per-cell aggregates

}  // namespace ampcg
