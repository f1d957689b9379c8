#include "ampcg/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace ampcg {

ChainGraph::ChainGraph(const std::vector<std::string>& names) {
    for (const auto& n : names) add_vertex(n);
}

int ChainGraph::add_vertex(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    const int v = static_cast<int>(names_.size());
    names_.push_back(name);
    index_.emplace(name, v);
    for (auto& row : und_) row.push_back(0);
    for (auto& row : dir_) row.push_back(0);
    und_.emplace_back(names_.size(), 0);
    dir_.emplace_back(names_.size(), 0);
    return v;
}

int ChainGraph::index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw PreconditionError("unknown vertex: " + name);
    return it->second;
}

void ChainGraph::add_undirected(int u, int v) {
    if (u == v) throw ParseError("self loop on vertex " + names_[u]);
    if (adjacent(u, v))
        throw ParseError("duplicate or conflicting edge between " + names_[u] + " and " + names_[v]);
    und_[u][v] = und_[v][u] = 1;
    ++undirected_count_;
}

void ChainGraph::add_directed(int u, int v) {
    if (u == v) throw ParseError("self loop on vertex " + names_[u]);
    if (adjacent(u, v))
        throw ParseError("duplicate or conflicting edge between " + names_[u] + " and " + names_[v]);
    dir_[u][v] = 1;
    ++directed_count_;
}

void ChainGraph::add_undirected(const std::string& u, const std::string& v) {
    const int a = add_vertex(u);
    const int b = add_vertex(v);
    add_undirected(a, b);
}

void ChainGraph::add_directed(const std::string& u, const std::string& v) {
    const int a = add_vertex(u);
    const int b = add_vertex(v);
    add_directed(a, b);
}

std::vector<int> ChainGraph::ne(int v) const {
    std::vector<int> out;
    for (int u = 0; u < size(); ++u)
        if (und_[v][u]) out.push_back(u);
    return out;
}

std::vector<int> ChainGraph::pa(int v) const {
    std::vector<int> out;
    for (int u = 0; u < size(); ++u)
        if (dir_[u][v]) out.push_back(u);
    return out;
}

std::vector<int> ChainGraph::ch(int v) const {
    std::vector<int> out;
    for (int u = 0; u < size(); ++u)
        if (dir_[v][u]) out.push_back(u);
    return out;
}

std::vector<int> ChainGraph::ad(int v) const {
    std::vector<int> out;
    for (int u = 0; u < size(); ++u)
        if (u != v && adjacent(v, u)) out.push_back(u);
    return out;
}

std::vector<int> ChainGraph::bd(int v) const {
    std::vector<int> out;
    for (int u = 0; u < size(); ++u)
        if (und_[v][u] || dir_[u][v]) out.push_back(u);
    return out;
}

std::vector<std::pair<int, int>> ChainGraph::undirected_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < size(); ++u)
        for (int v = u + 1; v < size(); ++v)
            if (und_[u][v]) out.emplace_back(u, v);
    return out;
}

std::vector<std::pair<int, int>> ChainGraph::directed_edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < size(); ++u)
        for (int v = 0; v < size(); ++v)
            if (dir_[u][v]) out.emplace_back(u, v);
    return out;
}

UndirectedGraph::UndirectedGraph(const std::vector<std::string>& names) : names_(names) {
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
        if (!index_.emplace(names_[i], i).second)
            throw ParseError("duplicate vertex name: " + names_[i]);
    }
    adj_.assign(names_.size(), std::vector<char>(names_.size(), 0));
}

UndirectedGraph UndirectedGraph::complete(const std::vector<std::string>& names) {
    UndirectedGraph g(names);
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v) g.add_edge(u, v);
    return g;
}

int UndirectedGraph::index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw PreconditionError("unknown vertex: " + name);
    return it->second;
}

void UndirectedGraph::add_edge(int u, int v) {
    if (u == v) throw ParseError("self loop on vertex " + names_[u]);
    if (!adj_[u][v]) {
        adj_[u][v] = adj_[v][u] = 1;
        ++edge_count_;
    }
}

void UndirectedGraph::remove_edge(int u, int v) {
    if (adj_[u][v]) {
        adj_[u][v] = adj_[v][u] = 0;
        --edge_count_;
    }
}

std::vector<int> UndirectedGraph::neighbors(int v) const {
    std::vector<int> out;
    for (int u = 0; u < size(); ++u)
        if (adj_[v][u]) out.push_back(u);
    return out;
}

std::vector<std::pair<int, int>> UndirectedGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < size(); ++u)
        for (int v = u + 1; v < size(); ++v)
            if (adj_[u][v]) out.emplace_back(u, v);
    return out;
}

bool UndirectedGraph::operator==(const UndirectedGraph& other) const {
    return names_ == other.names_ && adj_ == other.adj_;
}

namespace {

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ||
              c == '-' || c == '+'))
            return false;
    }
    return true;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream ss(line);
    std::string t;
    while (ss >> t) tokens.push_back(t);
    return tokens;
}

}  // namespace

ChainGraph parse_graph(std::istream& in) {
    ChainGraph g;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        const std::string where = "line " + std::to_string(lineno) + ": ";
        try {
            if (tokens.size() == 2 && tokens[0] == "node") {
                if (!valid_name(tokens[1])) throw ParseError("invalid vertex name '" + tokens[1] + "'");
                g.add_vertex(tokens[1]);
            } else if (tokens.size() == 3 && (tokens[1] == "->" || tokens[1] == "--")) {
                if (!valid_name(tokens[0])) throw ParseError("invalid vertex name '" + tokens[0] + "'");
                if (!valid_name(tokens[2])) throw ParseError("invalid vertex name '" + tokens[2] + "'");
                if (tokens[1] == "->")
                    g.add_directed(tokens[0], tokens[2]);
                else
                    g.add_undirected(tokens[0], tokens[2]);
            } else {
                throw ParseError("expected 'a -> b', 'a -- b' or 'node a'");
            }
        } catch (const ParseError& e) {
            throw ParseError(where + e.what());
        }
    }
    return g;
}

ChainGraph parse_graph_string(const std::string& text) {
    std::istringstream ss(text);
    return parse_graph(ss);
}

ChainGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open graph file: " + path);
    try {
        return parse_graph(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

std::string serialize_graph(const ChainGraph& g) {
    std::vector<std::string> isolated;
    for (int v = 0; v < g.size(); ++v)
        if (g.ad(v).empty()) isolated.push_back(g.name(v));
    std::sort(isolated.begin(), isolated.end());

    // Sort key: endpoint names, undirected endpoints canonicalized min-first.
    std::vector<std::pair<std::pair<std::string, std::string>, bool>> lines;
    for (auto [u, v] : g.undirected_edges()) {
        std::string a = g.name(u), b = g.name(v);
        if (b < a) std::swap(a, b);
        lines.push_back({{a, b}, false});
    }
    for (auto [u, v] : g.directed_edges()) lines.push_back({{g.name(u), g.name(v)}, true});
    std::sort(lines.begin(), lines.end());

    std::ostringstream out;
    for (const auto& n : isolated) out << "node " << n << "\n";
    for (const auto& [pair, directed] : lines)
        out << pair.first << (directed ? " -> " : " -- ") << pair.second << "\n";
    return out.str();
}

void save_graph_file(const ChainGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << serialize_graph(g);
}

}  // namespace ampcg
