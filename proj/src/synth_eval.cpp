#include "ampcg/synth_eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <thread>

#include <json.hpp>

#include "ampcg/errors.hpp"
#include "ampcg/graph_ops.hpp"
#include "ampcg/learn_lcd.hpp"
#include "ampcg/learn_pc.hpp"
#include "ampcg/rng.hpp"

namespace ampcg {

namespace {

std::string padded_name(int index, int p) {
    int width = 1;
    for (int q = p; q >= 10; q /= 10) ++width;
    std::string digits = std::to_string(index + 1);
    return "x" + std::string(width - digits.size(), '0') + digits;
}

}  // namespace

ChainGraph random_amp_cg(const GenConfig& cfg) {
    if (cfg.p < 2) throw PreconditionError("random_amp_cg needs p >= 2");
    if (cfg.expected_degree <= 0.0 || cfg.expected_degree > cfg.p - 1)
        throw PreconditionError("expected degree must lie in (0, p-1]");
    Rng rng(cfg.seed);
    const int p = cfg.p;
    const double s = cfg.expected_degree / (p - 1);

    std::vector<std::vector<char>> adj(p, std::vector<char>(p, 0));
    for (int i = 1; i < p; ++i)
        for (int j = 0; j < i; ++j)
            if (rng.bernoulli(s)) adj[i][j] = adj[j][i] = 1;

    const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(p)));
    std::vector<int> comp(p);
    for (int c = 0; c < k; ++c) {
        const int lo = c * p / k, hi = (c + 1) * p / k;
        for (int v = lo; v < hi; ++v) comp[v] = c;
    }

    ChainGraph g;
    for (int v = 0; v < p; ++v) g.add_vertex(padded_name(v, p));
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            if (!adj[i][j]) continue;
            if (comp[i] == comp[j])
                g.add_undirected(i, j);
            else
                g.add_directed(i, j);  // earlier interval feeds the later one
        }
    return g;
}

GaussianCGModel parametrize(const ChainGraph& g, std::uint64_t seed) {
    if (!is_amp_cg(g)) throw PreconditionError("parametrize requires a chain graph");
    Rng rng(seed);
    GaussianCGModel model;
    model.graph = g;

    const ChainComponents cc = chain_components(g);
    const int m = static_cast<int>(cc.components.size());

    // quotient topological order, lowest component index first among ready
    std::vector<std::set<int>> qadj(m);
    std::vector<int> indeg(m, 0);
    for (auto [u, v] : g.directed_edges()) {
        const int cu = cc.component_of[u], cv = cc.component_of[v];
        if (cu != cv && qadj[cu].insert(cv).second) ++indeg[cv];
    }
    std::vector<int> topo;
    std::set<int> ready;
    for (int c = 0; c < m; ++c)
        if (indeg[c] == 0) ready.insert(c);
    while (!ready.empty()) {
        const int c = *ready.begin();
        ready.erase(ready.begin());
        topo.push_back(c);
        for (int d : qadj[c])
            if (--indeg[d] == 0) ready.insert(d);
    }

    for (int c : topo) {
        GaussianCGModel::Component comp;
        comp.vertices = cc.components[c];
        std::set<int> pset;
        for (int v : comp.vertices)
            for (int q : g.pa(v)) pset.insert(q);
        comp.parents.assign(pset.begin(), pset.end());

        const std::size_t kv = comp.vertices.size(), kp = comp.parents.size();
        comp.b = Matrix(kv, kp);
        for (std::size_t i = 0; i < kv; ++i)
            for (std::size_t j = 0; j < kp; ++j)
                if (g.has_directed(comp.parents[j], comp.vertices[i]))
                    comp.b(i, j) = rng.signed_uniform(0.5, 1.5);

        Matrix conc = Matrix::identity(kv);
        for (std::size_t i = 0; i < kv; ++i)
            for (std::size_t j = i + 1; j < kv; ++j)
                if (g.has_undirected(comp.vertices[i], comp.vertices[j]))
                    conc(i, j) = conc(j, i) = rng.signed_uniform(0.1, 0.4);
        double worst = 0.0;
        for (std::size_t i = 0; i < kv; ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < kv; ++j)
                if (j != i) row += std::abs(conc(i, j));
            worst = std::max(worst, row);
        }
        if (worst > 0.9) {
            const double scale = 0.9 / worst;
            for (std::size_t i = 0; i < kv; ++i)
                for (std::size_t j = 0; j < kv; ++j)
                    if (j != i) conc(i, j) *= scale;
        }
        comp.sigma = inverse(conc);
        model.components.push_back(std::move(comp));
    }
    return model;
}

Dataset sample(const GaussianCGModel& model, int n, std::uint64_t seed) {
    if (n < 1) throw PreconditionError("sample needs n >= 1");
    Rng rng(seed);
    const int p = model.graph.size();

    std::vector<Matrix> chol;
    chol.reserve(model.components.size());
    for (const auto& comp : model.components) chol.push_back(cholesky(comp.sigma));

    Dataset d;
    d.variables = model.graph.names();
    d.kind = DatasetKind::Continuous;
    d.rows.assign(n, std::vector<double>(p, 0.0));
    for (auto& row : d.rows) {
        for (std::size_t ci = 0; ci < model.components.size(); ++ci) {
            const auto& comp = model.components[ci];
            const std::size_t kv = comp.vertices.size();
            std::vector<double> z(kv);
            for (auto& x : z) x = rng.normal();
            for (std::size_t i = 0; i < kv; ++i) {
                double value = 0.0;
                for (std::size_t j = 0; j <= i; ++j) value += chol[ci](i, j) * z[j];
                for (std::size_t j = 0; j < comp.parents.size(); ++j)
                    value += comp.b(i, j) * row[comp.parents[j]];
                row[comp.vertices[i]] = value;
            }
        }
    }
    return d;
}

Matrix implied_covariance(const GaussianCGModel& model) {
    const int p = model.graph.size();
    Matrix s(p, p);
    for (const auto& comp : model.components) {
        const std::size_t kv = comp.vertices.size(), kp = comp.parents.size();
        // cross-covariance with everything placed so far: B * cov[parents, .]
        Matrix cross(kv, p);
        for (std::size_t i = 0; i < kv; ++i)
            for (int col = 0; col < p; ++col) {
                double acc = 0.0;
                for (std::size_t j = 0; j < kp; ++j) acc += comp.b(i, j) * s(comp.parents[j], col);
                cross(i, col) = acc;
            }
        Matrix vpa(kp, kp);
        for (std::size_t i = 0; i < kp; ++i)
            for (std::size_t j = 0; j < kp; ++j) vpa(i, j) = s(comp.parents[i], comp.parents[j]);
        Matrix bt(kp, kv);
        for (std::size_t i = 0; i < kv; ++i)
            for (std::size_t j = 0; j < kp; ++j) bt(j, i) = comp.b(i, j);
        const Matrix own = matmul(matmul(comp.b, vpa), bt);

        for (std::size_t i = 0; i < kv; ++i) {
            const int vi = comp.vertices[i];
            for (int col = 0; col < p; ++col) s(vi, col) = s(col, vi) = cross(i, col);
        }
        for (std::size_t i = 0; i < kv; ++i)
            for (std::size_t j = 0; j < kv; ++j) {
                const int vi = comp.vertices[i], vj = comp.vertices[j];
                s(vi, vj) = own(i, j) + comp.sigma(i, j);
            }
    }
    return s;
}

namespace {

// pair state for the Hamming comparison
int pair_state(const ChainGraph& g, int u, int v) {
    if (g.has_undirected(u, v)) return 1;
    if (g.has_directed(u, v)) return 2;
    if (g.has_directed(v, u)) return 3;
    return 0;
}

}  // namespace

MetricsReport metrics(const ChainGraph& learned, const ChainGraph& truth) {
    auto a = learned.names();
    auto b = truth.names();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw PreconditionError("metrics requires identical vertex sets");

    const int p = truth.size();
    long long tp = 0, fp = 0, fn = 0, tn = 0, shd = 0;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            const int li = learned.index(truth.name(i)), lj = learned.index(truth.name(j));
            const bool te = truth.adjacent(i, j);
            const bool le = learned.adjacent(li, lj);
            if (te && le)
                ++tp;
            else if (!te && le)
                ++fp;
            else if (te && !le)
                ++fn;
            else
                ++tn;
            if (te != le)
                ++shd;
            else if (te && pair_state(truth, i, j) != pair_state(learned, li, lj))
                ++shd;
        }
    MetricsReport r;
    const long long pos = tp + fn, neg = fp + tn;
    r.tpr = pos > 0 ? static_cast<double>(tp) / pos : 1.0;
    r.fpr = neg > 0 ? static_cast<double>(fp) / neg : 0.0;
    r.tdr = (tp + fp) > 0 ? static_cast<double>(tp) / (tp + fp) : 1.0;
    r.acc = static_cast<double>(tp + tn) / (pos + neg);
    r.shd = shd;
    return r;
}

namespace {

struct BenchTask {
    int p, n, rep;
    double degree, alpha;
    std::string algo;
};

LearnVariant variant_of(const std::string& algo) {
    if (algo == "pc") return LearnVariant::Original;
    if (algo == "stable") return LearnVariant::Stable;
    if (algo == "conservative") return LearnVariant::Conservative;
    if (algo == "stable-conservative") return LearnVariant::StableConservative;
    throw PreconditionError("unknown learner: " + algo);
}

BenchRow run_task(const BenchTask& t, std::uint64_t master_seed, bool timings) {
    BenchRow row;
    row.p = t.p;
    row.n = t.n;
    row.degree = t.degree;
    row.alpha = t.alpha;
    row.algo = t.algo;
    row.rep = t.rep;
    try {
        char label[128];
        std::snprintf(label, sizeof label, "p=%d,n=%d,N=%.6g,alpha=%.6g", t.p, t.n, t.degree,
                      t.alpha);
        const std::uint64_t cell = hash_label(label);
        const ChainGraph truth =
            random_amp_cg({t.p, t.degree, derive_seed(master_seed, "bench-graph", cell, t.rep)});
        const auto start = std::chrono::steady_clock::now();
        if (t.algo == "oracle") {
            row.report = metrics(truth, truth);
        } else {
            const GaussianCGModel model =
                parametrize(truth, derive_seed(master_seed, "bench-model", cell, t.rep));
            const Dataset data =
                sample(model, t.n, derive_seed(master_seed, "bench-sample", cell, t.rep));
            GaussianCISource src(data, t.alpha);
            LearnConfig cfg;
            cfg.alpha = t.alpha;
            cfg.max_sepset_size = std::max(0, t.n - 4);  // Fisher-z validity bound
            ChainGraph learned;
            if (t.algo == "lcd") {
                UIGMethod m;
                m.kind = UIGKind::GaussianConcentration;
                learned = lcd_amp(src, cfg, m).graph;
            } else {
                cfg.variant = variant_of(t.algo);
                learned = learn(src, cfg).graph;
            }
            // Compare equivalence-class representatives: two learners that
            // emit different members of one class score identically, and an
            // edge left undirected is only charged when the class itself
            // pins a direction. Skeleton metrics are unaffected.
            row.report = metrics(triplex_representative(learned), triplex_representative(truth));
            row.report.query_count = src.query_count();
        }
        if (timings) {
            const auto stop = std::chrono::steady_clock::now();
            row.report.elapsed_ms =
                std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
        }
    } catch (const std::exception& e) {
        row.failed = true;
        row.error = e.what();
    }
    return row;
}

}  // namespace

std::vector<BenchRow> benchmark(const BenchConfig& cfg) {
    for (const auto& algo : cfg.algos)
        if (algo != "lcd" && algo != "oracle") variant_of(algo);  // fail fast on unknown names
    if (cfg.reps < 0) throw PreconditionError("reps must be non-negative");

    std::vector<BenchTask> tasks;
    for (int p : cfg.p_values)
        for (int n : cfg.n_values)
            for (double deg : cfg.degree_values)
                for (double alpha : cfg.alpha_values)
                    for (int rep = 0; rep < cfg.reps; ++rep)
                        for (const auto& algo : cfg.algos)
                            tasks.push_back({p, n, rep, deg, alpha, algo});

    std::vector<BenchRow> rows(tasks.size());
    const int threads = std::max(1, cfg.threads);
    if (threads == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            rows[i] = run_task(tasks[i], cfg.seed, cfg.timings);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= tasks.size()) return;
                    rows[i] = run_task(tasks[i], cfg.seed, cfg.timings);
                }
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

std::string bench_rows_json(const std::vector<BenchRow>& rows) {
    std::string out;
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["schema"] = 1;
        j["p"] = r.p;
        j["n"] = r.n;
        j["degree"] = r.degree;
        j["alpha"] = r.alpha;
        j["algo"] = r.algo;
        j["rep"] = r.rep;
        if (r.failed) {
            j["failed"] = true;
            j["error"] = r.error;
        } else {
            j["tpr"] = r.report.tpr;
            j["fpr"] = r.report.fpr;
            j["tdr"] = r.report.tdr;
            j["acc"] = r.report.acc;
            j["shd"] = r.report.shd;
            j["query_count"] = r.report.query_count;
            j["elapsed_ms"] = r.report.elapsed_ms;
        }
        out += j.dump();
        out += '\n';
    }
    return out;
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

std::string bench_summary_csv(const std::vector<BenchRow>& rows) {
    struct Agg {
        std::vector<double> tpr, fpr, tdr, acc, shd, qc;
        int failed = 0;
    };
    std::map<std::tuple<int, int, double, double, std::string>, Agg> cells;
    for (const auto& r : rows) {
        Agg& a = cells[{r.p, r.n, r.degree, r.alpha, r.algo}];
        if (r.failed) {
            ++a.failed;
            continue;
        }
        a.tpr.push_back(r.report.tpr);
        a.fpr.push_back(r.report.fpr);
        a.tdr.push_back(r.report.tdr);
        a.acc.push_back(r.report.acc);
        a.shd.push_back(static_cast<double>(r.report.shd));
        a.qc.push_back(static_cast<double>(r.report.query_count));
    }
    const auto mean = [](const std::vector<double>& xs) {
        if (xs.empty()) return 0.0;
        double s = 0.0;
        for (double x : xs) s += x;
        return s / static_cast<double>(xs.size());
    };
    const auto sd = [&](const std::vector<double>& xs) {
        if (xs.size() < 2) return 0.0;
        const double m = mean(xs);
        double s = 0.0;
        for (double x : xs) s += (x - m) * (x - m);
        return std::sqrt(s / static_cast<double>(xs.size() - 1));
    };
    std::string out =
        "p,n,degree,alpha,algo,runs,failed,tpr_mean,tpr_sd,fpr_mean,fpr_sd,tdr_mean,tdr_sd,"
        "acc_mean,acc_sd,shd_mean,shd_sd,query_count_mean\n";
    for (const auto& [key, a] : cells) {
        const auto& [p, n, deg, alpha, algo] = key;
        out += std::to_string(p) + "," + std::to_string(n) + "," + fmt(deg) + "," + fmt(alpha) +
               "," + algo + "," + std::to_string(a.tpr.size()) + "," + std::to_string(a.failed) +
               "," + fmt(mean(a.tpr)) + "," + fmt(sd(a.tpr)) + "," + fmt(mean(a.fpr)) + "," +
               fmt(sd(a.fpr)) + "," + fmt(mean(a.tdr)) + "," + fmt(sd(a.tdr)) + "," +
               fmt(mean(a.acc)) + "," + fmt(sd(a.acc)) + "," + fmt(mean(a.shd)) + "," +
               fmt(sd(a.shd)) + "," + fmt(mean(a.qc)) + "\n";
    }
    return out;
}

}  // namespace ampcg
