// Command-line front end: graph queries, separator problems, structure
// learners, synthetic-data generation, and benchmark grids behind one binary.
//
// Exit codes: 0 success, 1 usage error, 2 input/format error, 3 violated
// algorithmic precondition. `-` stands for stdin/stdout.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ampcg/citest.hpp"
#include "ampcg/errors.hpp"
#include "ampcg/graph.hpp"
#include "ampcg/graph_ops.hpp"
#include "ampcg/learn_lcd.hpp"
#include "ampcg/learn_pc.hpp"
#include "ampcg/rng.hpp"
#include "ampcg/separation.hpp"
#include "ampcg/synth_eval.hpp"

namespace {

using nlohmann::ordered_json;

ampcg::ChainGraph read_graph(const std::string& path) {
    if (path == "-") return ampcg::parse_graph(std::cin);
    return ampcg::load_graph_file(path);
}

std::string read_text(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw ampcg::ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw ampcg::ParseError("cannot open " + path + " for writing");
    out << text;
}

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream ss(csv);
    while (std::getline(ss, token, ',')) {
        const auto b = token.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        const auto e = token.find_last_not_of(" \t");
        out.push_back(token.substr(b, e - b + 1));
    }
    return out;
}

std::string fmt_set(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    if (names.empty()) return "{}";
    std::string out = names[0];
    for (std::size_t i = 1; i < names.size(); ++i) out += "," + names[i];
    return out;
}

ordered_json json_set(std::vector<std::string> names) {
    std::sort(names.begin(), names.end());
    return ordered_json(names);
}

std::optional<ampcg::DatasetKind> parse_kind(const std::string& kind) {
    if (kind == "auto") return std::nullopt;
    if (kind == "continuous") return ampcg::DatasetKind::Continuous;
    if (kind == "discrete") return ampcg::DatasetKind::Discrete;
    throw CLI::ValidationError("--kind", "expected auto, continuous, or discrete");
}

ampcg::LearnVariant parse_variant(const std::string& algo) {
    if (algo == "pc") return ampcg::LearnVariant::Original;
    if (algo == "stable") return ampcg::LearnVariant::Stable;
    if (algo == "conservative") return ampcg::LearnVariant::Conservative;
    if (algo == "stable-conservative") return ampcg::LearnVariant::StableConservative;
    throw CLI::ValidationError("--algo", "unknown learner: " + algo);
}

ampcg::UIGMethod parse_uig(const std::string& uig) {
    ampcg::UIGMethod m;
    if (uig == "gaussian")
        m.kind = ampcg::UIGKind::GaussianConcentration;
    else if (uig == "full-cond")
        m.kind = ampcg::UIGKind::FullConditional;
    else if (uig == "oracle")
        m.kind = ampcg::UIGKind::Oracle;
    else if (uig.rfind("file:", 0) == 0) {
        m.kind = ampcg::UIGKind::File;
        m.path = uig.substr(5);
    } else
        throw CLI::ValidationError("--uig", "expected gaussian, full-cond, oracle, or file:PATH");
    return m;
}

// ---------------------------------------------------------------- graph ----

struct GraphOpts {
    std::string graph;
    std::string out = "-";
    bool json = false;
};

void run_graph_info(const GraphOpts& o) {
    const ampcg::ChainGraph g = read_graph(o.graph);
    const ampcg::ChainComponents cc = ampcg::chain_components(g);
    std::vector<std::vector<std::string>> comps;
    for (const auto& comp : cc.components) {
        std::vector<std::string> names;
        for (int v : comp) names.push_back(g.name(v));
        std::sort(names.begin(), names.end());
        comps.push_back(std::move(names));
    }
    std::sort(comps.begin(), comps.end());
    const std::size_t ntriplex = ampcg::triplexes(g).size();
    const bool valid = ampcg::is_amp_cg(g);

    if (o.json) {
        ordered_json j;
        j["schema"] = 1;
        j["vertices"] = g.size();
        j["directed_edges"] = g.directed_edge_count();
        j["undirected_edges"] = g.undirected_edge_count();
        j["components"] = comps;
        j["triplexes"] = ntriplex;
        j["amp_cg"] = valid;
        std::cout << j.dump() << "\n";
        return;
    }
    std::string comp_str;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i) comp_str += ",";
        comp_str += "{";
        for (std::size_t k = 0; k < comps[i].size(); ++k) {
            if (k) comp_str += ",";
            comp_str += comps[i][k];
        }
        comp_str += "}";
    }
    std::cout << "vertices: " << g.size() << "\n"
              << "directed edges: " << g.directed_edge_count() << "\n"
              << "undirected edges: " << g.undirected_edge_count() << "\n"
              << "components: " << comp_str << "\n"
              << "triplexes: " << ntriplex << "\n"
              << "amp_cg: " << (valid ? "true" : "false") << "\n";
}

void run_graph_canon(const GraphOpts& o) {
    write_text(o.out, ampcg::serialize_graph(read_graph(o.graph)));
}

// --------------------------------------------------------------- minsep ----

struct MinsepOpts {
    std::string graph, u, v, z, s, x, y;
    bool json = false;
};

void run_minsep_test(const MinsepOpts& o) {
    const ampcg::ChainGraph g = read_graph(o.graph);
    const bool minimal = ampcg::is_minimal_separator(g, o.u, o.v, split_names(o.z));
    if (o.json) {
        ordered_json j;
        j["schema"] = 1;
        j["minimal"] = minimal;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "minimal: " << (minimal ? "true" : "false") << "\n";
    }
}

void run_minsep_find(const MinsepOpts& o) {
    const ampcg::ChainGraph g = read_graph(o.graph);
    const auto sep = ampcg::find_minimal_separator(g, o.u, o.v);
    if (o.json) {
        ordered_json j;
        j["schema"] = 1;
        j["separator"] = json_set(sep);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << fmt_set(sep) << "\n";
    }
}

void run_minsep_restricted(const MinsepOpts& o, bool minimal) {
    const ampcg::ChainGraph g = read_graph(o.graph);
    const auto within = split_names(o.s);
    const auto sep = minimal ? ampcg::restricted_minimal_separator(g, o.u, o.v, within)
                             : ampcg::restricted_separator(g, o.u, o.v, within);
    if (o.json) {
        ordered_json j;
        j["schema"] = 1;
        j["separable"] = sep.has_value();
        if (sep) j["separator"] = json_set(*sep);
        std::cout << j.dump() << "\n";
    } else if (sep) {
        std::cout << fmt_set(*sep) << "\n";
    } else {
        std::cout << "not separable\n";
    }
}

void run_minsep_sets(const MinsepOpts& o) {
    const ampcg::ChainGraph g = read_graph(o.graph);
    const auto sep = ampcg::minimal_separator_sets(g, split_names(o.x), split_names(o.y));
    if (o.json) {
        ordered_json j;
        j["schema"] = 1;
        j["separator"] = json_set(sep);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << fmt_set(sep) << "\n";
    }
}

void run_minsep_enumerate(const MinsepOpts& o) {
    const ampcg::ChainGraph g = read_graph(o.graph);
    const auto seps = ampcg::enumerate_minimal_separators(g, o.u, o.v);
    if (o.json) {
        ordered_json j;
        j["schema"] = 1;
        ordered_json arr = ordered_json::array();
        for (const auto& s : seps) arr.push_back(json_set(s));
        j["separators"] = arr;
        std::cout << j.dump() << "\n";
    } else {
        for (const auto& s : seps) std::cout << fmt_set(s) << "\n";
    }
}

// ---------------------------------------------------------------- learn ----

struct LearnOpts {
    std::string algo = "stable";
    std::string data, oracle;
    std::string kind = "auto";
    double alpha = 0.01;
    std::string order;
    int max_sepset = -1;
    std::string out = "-";
    std::string report;
    std::string uig = "full-cond";
    std::string emit_tree;
    bool json = false;
    bool timings = false;
};

ordered_json report_json(const std::string& algo, double alpha, const ampcg::RunLog& log,
                         long long elapsed_ms) {
    ordered_json j;
    j["schema"] = 1;
    j["algo"] = algo;
    j["alpha"] = alpha;
    j["query_count"] = log.query_count;
    j["elapsed_ms"] = elapsed_ms;
    j["max_level"] = log.max_level_reached;
    std::map<int, int> per_level;
    ordered_json removals = ordered_json::array();
    for (const auto& r : log.removals) {
        ++per_level[r.level];
        ordered_json e;
        e["level"] = r.level;
        e["u"] = r.u;
        e["v"] = r.v;
        e["sepset"] = json_set(r.sepset);
        removals.push_back(std::move(e));
    }
    ordered_json counts = ordered_json::object();
    for (const auto& [level, count] : per_level) counts[std::to_string(level)] = count;
    j["removals_by_level"] = counts;
    j["removals"] = removals;
    return j;
}

void run_learn(const LearnOpts& o) {
    if (o.data.empty() == o.oracle.empty())
        throw CLI::ValidationError("learn", "exactly one of --data or --oracle is required");
    if (!o.emit_tree.empty() && o.algo != "lcd")
        throw CLI::ValidationError("--emit-tree", "requires --algo lcd");
    if (o.algo != "lcd") parse_variant(o.algo);  // validate before loading anything

    std::unique_ptr<ampcg::CISource> src;
    if (!o.oracle.empty()) {
        src = std::make_unique<ampcg::OracleCISource>(read_graph(o.oracle));
    } else {
        ampcg::Dataset ds;
        if (o.data == "-")
            ds = ampcg::parse_csv(std::cin, parse_kind(o.kind));
        else
            ds = ampcg::load_csv(o.data, parse_kind(o.kind));
        if (ds.kind == ampcg::DatasetKind::Continuous)
            src = std::make_unique<ampcg::GaussianCISource>(ds, o.alpha);
        else
            src = std::make_unique<ampcg::DiscreteCISource>(std::move(ds), o.alpha);
    }

    ampcg::LearnConfig cfg;
    cfg.alpha = o.alpha;
    cfg.variable_order = split_names(o.order);
    if (o.max_sepset >= 0) cfg.max_sepset_size = o.max_sepset;

    const auto start = std::chrono::steady_clock::now();
    ampcg::ChainGraph learned;
    ampcg::RunLog log;
    std::string tree_json;
    if (o.algo == "lcd") {
        const ampcg::LcdResult res = ampcg::lcd_amp(*src, cfg, parse_uig(o.uig));
        learned = res.graph;
        log = res.log;
        tree_json = res.tree.to_json();
    } else {
        cfg.variant = parse_variant(o.algo);
        ampcg::LearnResult res = ampcg::learn(*src, cfg);
        learned = std::move(res.graph);
        log = std::move(res.skeleton.log);
    }
    long long elapsed_ms = 0;
    if (o.timings) {
        const auto stop = std::chrono::steady_clock::now();
        elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
    }

    if (!o.emit_tree.empty()) write_text(o.emit_tree, tree_json + "\n");
    const std::string graph_text = ampcg::serialize_graph(learned);
    const ordered_json report = report_json(o.algo, o.alpha, log, elapsed_ms);
    if (o.json) {
        ordered_json j;
        j["schema"] = 1;
        j["graph"] = graph_text;
        j["report"] = report;
        std::cout << j.dump() << "\n";
        if (o.out != "-") write_text(o.out, graph_text);
    } else {
        write_text(o.out, graph_text);
    }
    if (!o.report.empty()) write_text(o.report, report.dump() + "\n");
}

// ------------------------------------------------------ gen/sample/eval ----

struct GenOpts {
    int p = 0;
    double degree = 0.0;
    std::uint64_t seed = 0;
    std::string out = "-";
};

void run_gen(const GenOpts& o) {
    write_text(o.out, ampcg::serialize_graph(ampcg::random_amp_cg({o.p, o.degree, o.seed})));
}

struct SampleOpts {
    std::string graph;
    int n = 0;
    std::uint64_t seed = 0;
    std::string out = "-";
};

std::string csv_text(const ampcg::Dataset& d) {
    std::string out;
    for (std::size_t j = 0; j < d.variables.size(); ++j) {
        if (j) out += ",";
        out += d.variables[j];
    }
    out += "\n";
    for (const auto& row : d.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ",";
            out += nlohmann::json(row[j]).dump();  // shortest exact decimal
        }
        out += "\n";
    }
    return out;
}

void run_sample(const SampleOpts& o) {
    const ampcg::ChainGraph g = read_graph(o.graph);
    const ampcg::GaussianCGModel model =
        ampcg::parametrize(g, ampcg::derive_seed(o.seed, "model"));
    const ampcg::Dataset d = ampcg::sample(model, o.n, ampcg::derive_seed(o.seed, "data"));
    write_text(o.out, csv_text(d));
}

struct EvalOpts {
    std::string learned, truth;
    bool json = false;
};

void run_eval(const EvalOpts& o) {
    const ampcg::MetricsReport m =
        ampcg::metrics(read_graph(o.learned), read_graph(o.truth));
    if (o.json) {
        ordered_json j;
        j["schema"] = 1;
        j["tpr"] = m.tpr;
        j["fpr"] = m.fpr;
        j["tdr"] = m.tdr;
        j["acc"] = m.acc;
        j["shd"] = m.shd;
        std::cout << j.dump() << "\n";
        return;
    }
    std::cout << "tpr: " << nlohmann::json(m.tpr).dump() << "\n"
              << "fpr: " << nlohmann::json(m.fpr).dump() << "\n"
              << "tdr: " << nlohmann::json(m.tdr).dump() << "\n"
              << "acc: " << nlohmann::json(m.acc).dump() << "\n"
              << "shd: " << m.shd << "\n";
}

// ---------------------------------------------------------------- bench ----

struct BenchOpts {
    std::string config;
    std::string out = "-";
    std::string summary;
    int threads = 0;       // 0 = take from config
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool timings = false;
    int reps = -1;  // <0 = take from config
};

std::vector<int> to_ints(const std::vector<std::string>& parts, const std::string& key) {
    std::vector<int> out;
    for (const auto& p : parts) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(p, &used);
            if (used != p.size()) throw std::invalid_argument(p);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ampcg::ParseError("bench config: bad integer '" + p + "' for " + key);
        }
    }
    return out;
}

std::vector<double> to_doubles(const std::vector<std::string>& parts, const std::string& key) {
    std::vector<double> out;
    for (const auto& p : parts) {
        try {
            std::size_t used = 0;
            const double v = std::stod(p, &used);
            if (used != p.size()) throw std::invalid_argument(p);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ampcg::ParseError("bench config: bad number '" + p + "' for " + key);
        }
    }
    return out;
}

ampcg::BenchConfig parse_bench_config(const std::string& text) {
    ampcg::BenchConfig cfg;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ampcg::ParseError(std::string("bench config: ") + e.what());
        }
        const auto ints = [&](const char* key) {
            std::vector<int> out;
            if (!j.contains(key)) return out;
            if (j[key].is_array())
                for (const auto& v : j[key]) out.push_back(v.get<int>());
            else
                out.push_back(j[key].get<int>());
            return out;
        };
        const auto doubles = [&](const char* key) {
            std::vector<double> out;
            if (!j.contains(key)) return out;
            if (j[key].is_array())
                for (const auto& v : j[key]) out.push_back(v.get<double>());
            else
                out.push_back(j[key].get<double>());
            return out;
        };
        try {
            cfg.p_values = ints("p");
            cfg.n_values = ints("n");
            cfg.degree_values = doubles("degree");
            cfg.alpha_values = doubles("alpha");
            if (j.contains("algos"))
                for (const auto& v : j["algos"]) cfg.algos.push_back(v.get<std::string>());
            if (j.contains("reps")) cfg.reps = j["reps"].get<int>();
            if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
            if (j.contains("threads")) cfg.threads = j["threads"].get<int>();
        } catch (const nlohmann::json::exception& e) {
            throw ampcg::ParseError(std::string("bench config: ") + e.what());
        }
    } else {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            const auto b = line.find_first_not_of(" \t");
            if (b == std::string::npos || line[b] == '#') continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ampcg::ParseError("bench config line " + std::to_string(lineno) +
                                        ": expected key=value");
            const auto trim = [](std::string s) {
                const auto x = s.find_first_not_of(" \t");
                if (x == std::string::npos) return std::string();
                const auto y = s.find_last_not_of(" \t");
                return s.substr(x, y - x + 1);
            };
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            const auto parts = split_names(value);
            if (key == "p")
                cfg.p_values = to_ints(parts, key);
            else if (key == "n")
                cfg.n_values = to_ints(parts, key);
            else if (key == "degree" || key == "N")
                cfg.degree_values = to_doubles(parts, key);
            else if (key == "alpha")
                cfg.alpha_values = to_doubles(parts, key);
            else if (key == "algos")
                cfg.algos = parts;
            else if (key == "reps")
                cfg.reps = to_ints({value}, key).at(0);
            else if (key == "seed")
                cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
            else if (key == "threads")
                cfg.threads = to_ints({value}, key).at(0);
            else
                throw ampcg::ParseError("bench config line " + std::to_string(lineno) +
                                        ": unknown key '" + key + "'");
        }
    }
    if (cfg.p_values.empty()) throw ampcg::ParseError("bench config: missing p");
    if (cfg.n_values.empty()) throw ampcg::ParseError("bench config: missing n");
    if (cfg.degree_values.empty()) throw ampcg::ParseError("bench config: missing degree");
    if (cfg.alpha_values.empty()) throw ampcg::ParseError("bench config: missing alpha");
    if (cfg.algos.empty()) throw ampcg::ParseError("bench config: missing algos");
    return cfg;
}

void run_bench(const BenchOpts& o) {
    ampcg::BenchConfig cfg = parse_bench_config(read_text(o.config));
    if (o.threads > 0) cfg.threads = o.threads;
    if (o.seed_given) cfg.seed = o.seed;
    if (o.reps >= 0) cfg.reps = o.reps;
    cfg.timings = o.timings;
    const std::vector<ampcg::BenchRow> rows = ampcg::benchmark(cfg);
    write_text(o.out, ampcg::bench_rows_json(rows));
    if (!o.summary.empty()) write_text(o.summary, ampcg::bench_summary_csv(rows));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toolkit for AMP chain graphs: separation queries, minimal separators,"
                 " constraint-based structure learners, and Gaussian benchmarks"};
    app.require_subcommand(1);

    // graph
    auto graph_opts = std::make_shared<GraphOpts>();
    CLI::App* graph = app.add_subcommand("graph", "Inspect or canonicalize a graph file");
    graph->require_subcommand(1);
    CLI::App* ginfo = graph->add_subcommand("info", "Counts, chain components, triplexes");
    ginfo->add_option("--graph", graph_opts->graph, "graph file (- for stdin)")->required();
    ginfo->add_flag("--json", graph_opts->json, "JSON output");
    ginfo->callback([graph_opts] { run_graph_info(*graph_opts); });
    CLI::App* gcanon = graph->add_subcommand("canon", "Parse and re-serialize canonically");
    gcanon->add_option("--graph", graph_opts->graph, "graph file (- for stdin)")->required();
    gcanon->add_option("-o,--out", graph_opts->out, "output path (- for stdout)");
    gcanon->callback([graph_opts] { run_graph_canon(*graph_opts); });

    // minsep
    auto ms = std::make_shared<MinsepOpts>();
    CLI::App* minsep = app.add_subcommand("minsep", "Minimal separator problems");
    minsep->require_subcommand(1);
    const auto add_common = [&](CLI::App* sub, bool uv) {
        sub->add_option("--graph", ms->graph, "graph file (- for stdin)")->required();
        if (uv) {
            sub->add_option("--u", ms->u, "first vertex")->required();
            sub->add_option("--v", ms->v, "second vertex")->required();
        }
        sub->add_flag("--json", ms->json, "JSON output");
    };
    CLI::App* mtest = minsep->add_subcommand("test", "Is --z a minimal separator of u,v?");
    add_common(mtest, true);
    mtest->add_option("--z", ms->z, "candidate separator (comma-separated)");
    mtest->callback([ms] { run_minsep_test(*ms); });
    CLI::App* mfind = minsep->add_subcommand("find", "Find one minimal separator of u,v");
    add_common(mfind, true);
    mfind->callback([ms] { run_minsep_find(*ms); });
    CLI::App* mrestr = minsep->add_subcommand("restricted", "Separator within --s, if any");
    add_common(mrestr, true);
    mrestr->add_option("--s", ms->s, "allowed vertex pool (comma-separated)");
    mrestr->callback([ms] { run_minsep_restricted(*ms, false); });
    CLI::App* mrmin = minsep->add_subcommand("restricted-min", "Minimal separator within --s");
    add_common(mrmin, true);
    mrmin->add_option("--s", ms->s, "allowed vertex pool (comma-separated)");
    mrmin->callback([ms] { run_minsep_restricted(*ms, true); });
    CLI::App* msets = minsep->add_subcommand("sets", "Minimal separator between sets X and Y");
    add_common(msets, false);
    msets->add_option("--x", ms->x, "first vertex set (comma-separated)")->required();
    msets->add_option("--y", ms->y, "second vertex set (comma-separated)")->required();
    msets->callback([ms] { run_minsep_sets(*ms); });
    CLI::App* menum = minsep->add_subcommand("enumerate", "All minimal separators of u,v");
    add_common(menum, true);
    menum->callback([ms] { run_minsep_enumerate(*ms); });

    // learn
    auto lo = std::make_shared<LearnOpts>();
    CLI::App* learn = app.add_subcommand("learn", "Constraint-based structure learners");
    learn->add_option("--algo", lo->algo,
                      "pc | stable | conservative | stable-conservative | lcd");
    learn->add_option("--data", lo->data, "CSV dataset (- for stdin)");
    learn->add_option("--oracle", lo->oracle, "reference graph acting as a perfect CI oracle");
    learn->add_option("--kind", lo->kind, "dataset kind: auto | continuous | discrete");
    learn->add_option("--alpha", lo->alpha, "test significance level");
    learn->add_option("--order", lo->order, "variable ordering, comma-separated");
    learn->add_option("--max-sepset", lo->max_sepset, "cap on separator-set size");
    learn->add_option("-o,--out", lo->out, "learned graph output (- for stdout)");
    learn->add_option("--report", lo->report, "write the JSON run report here");
    learn->add_option("--uig", lo->uig,
                      "lcd undirected-graph step: gaussian | full-cond | oracle | file:PATH");
    learn->add_option("--emit-tree", lo->emit_tree, "write the separation tree JSON (lcd)");
    learn->add_flag("--json", lo->json, "single JSON object on stdout");
    learn->add_flag("--timings", lo->timings, "measure elapsed_ms (off: report 0)");
    learn->callback([lo] { run_learn(*lo); });

    // gen
    auto go = std::make_shared<GenOpts>();
    CLI::App* gen = app.add_subcommand("gen", "Generate a random AMP chain graph");
    gen->add_option("--p", go->p, "vertex count")->required();
    gen->add_option("--degree", go->degree, "expected adjacent-vertex degree")->required();
    gen->add_option("--seed", go->seed, "RNG seed");
    gen->add_option("-o,--out", go->out, "output path (- for stdout)");
    gen->callback([go] { run_gen(*go); });

    // sample
    auto so = std::make_shared<SampleOpts>();
    CLI::App* samp = app.add_subcommand("sample", "Parametrize a graph and draw Gaussian rows");
    samp->add_option("--graph", so->graph, "graph file (- for stdin)")->required();
    samp->add_option("--n", so->n, "sample size")->required();
    samp->add_option("--seed", so->seed, "RNG seed");
    samp->add_option("-o,--out", so->out, "CSV output path (- for stdout)");
    samp->callback([so] { run_sample(*so); });

    // eval
    auto eo = std::make_shared<EvalOpts>();
    CLI::App* ev = app.add_subcommand("eval", "Recovery metrics of a learned graph vs truth");
    ev->add_option("--learned", eo->learned, "learned graph file")->required();
    ev->add_option("--truth", eo->truth, "reference graph file")->required();
    ev->add_flag("--json", eo->json, "JSON output");
    ev->callback([eo] { run_eval(*eo); });

    // bench
    auto bo = std::make_shared<BenchOpts>();
    CLI::App* bench = app.add_subcommand("bench", "Run a benchmark grid from a config file");
    bench->add_option("--config", bo->config, "grid config: key=value lines or JSON")->required();
    bench->add_option("-o,--out", bo->out, "JSON-lines output (- for stdout)");
    bench->add_option("--summary", bo->summary, "also write a CSV summary here");
    bench->add_option("--threads", bo->threads, "worker threads");
    CLI::Option* seed_opt = bench->add_option("--seed", bo->seed, "master seed override");
    bench->add_option("--reps", bo->reps, "repetitions override");
    bench->add_flag("--timings", bo->timings, "measure elapsed_ms (off: report 0)");
    bench->callback([bo, seed_opt] {
        bo->seed_given = seed_opt->count() > 0;
        run_bench(*bo);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const ampcg::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ampcg::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
