#include "ampcg/citest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "ampcg/errors.hpp"
#include "ampcg/separation.hpp"
#include "ampcg/stats.hpp"

namespace ampcg {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

bool integral_value(double v) { return std::floor(v) == v && std::abs(v) < 1e15; }

}  // namespace

int Dataset::column(const std::string& name) const {
    for (int i = 0; i < p(); ++i)
        if (variables[i] == name) return i;
    throw ParseError("unknown variable: " + name);
}

Dataset parse_csv(std::istream& in, std::optional<DatasetKind> kind) {
    Dataset d;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto cells = split_csv_line(line);
        if (d.variables.empty()) {
            for (auto& c : cells) {
                if (c.empty()) throw ParseError("line 1: empty column name");
                if (std::find(d.variables.begin(), d.variables.end(), c) != d.variables.end())
                    throw ParseError("line 1: duplicate column name " + c);
                d.variables.push_back(c);
            }
            continue;
        }
        if (static_cast<int>(cells.size()) != d.p())
            throw ParseError("line " + std::to_string(lineno) + ": expected " +
                             std::to_string(d.p()) + " cells, got " +
                             std::to_string(cells.size()));
        std::vector<double> row(d.p());
        for (int i = 0; i < d.p(); ++i) {
            try {
                std::size_t pos = 0;
                row[i] = std::stod(cells[i], &pos);
                if (pos != cells[i].size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(lineno) + ": bad number '" +
                                 cells[i] + "'");
            }
        }
        d.rows.push_back(std::move(row));
    }
    if (d.variables.empty()) throw ParseError("empty CSV: missing header row");
    if (d.rows.empty()) throw ParseError("CSV has no data rows");

    bool could_be_discrete = true;
    for (const auto& row : d.rows) {
        for (double v : row)
            if (!integral_value(v) || v < 0) {
                could_be_discrete = false;
                break;
            }
        if (!could_be_discrete) break;
    }
    std::vector<std::vector<double>> levels(d.p());
    if (could_be_discrete) {
        for (int c = 0; c < d.p(); ++c) {
            auto& ls = levels[c];
            for (const auto& row : d.rows) ls.push_back(row[c]);
            std::sort(ls.begin(), ls.end());
            ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
        }
    }
    bool small_levels = could_be_discrete;
    for (const auto& ls : levels)
        if (static_cast<int>(ls.size()) > kDiscreteDetectLevels) small_levels = false;

    DatasetKind resolved;
    if (kind) {
        resolved = *kind;
        if (resolved == DatasetKind::Discrete && !could_be_discrete)
            throw ParseError("discrete dataset requested but cells are not non-negative integers");
    } else {
        resolved = small_levels ? DatasetKind::Discrete : DatasetKind::Continuous;
    }
    d.kind = resolved;

    if (d.kind == DatasetKind::Discrete) {
        d.cardinality.resize(d.p());
        for (int c = 0; c < d.p(); ++c) {
            const auto& ls = levels[c];
            if (ls.size() < 2)
                throw ParseError("discrete column " + d.variables[c] +
                                 " is constant (needs at least 2 levels)");
            d.cardinality[c] = static_cast<int>(ls.size());
            for (auto& row : d.rows) {
                const auto it = std::lower_bound(ls.begin(), ls.end(), row[c]);
                row[c] = static_cast<double>(it - ls.begin());
            }
        }
    }
    return d;
}

Dataset load_csv(const std::string& path, std::optional<DatasetKind> kind) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return parse_csv(in, kind);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Matrix correlation_matrix(const Dataset& d) {
    const int n = d.n(), p = d.p();
    std::vector<double> mean(p, 0.0);
    for (const auto& row : d.rows)
        for (int i = 0; i < p; ++i) mean[i] += row[i];
    for (int i = 0; i < p; ++i) mean[i] /= n;

    Matrix cov(p, p);
    for (const auto& row : d.rows)
        for (int i = 0; i < p; ++i)
            for (int j = i; j < p; ++j) cov(i, j) += (row[i] - mean[i]) * (row[j] - mean[j]);
    Matrix corr(p, p);
    for (int i = 0; i < p; ++i) {
        if (cov(i, i) <= 0.0)
            throw PreconditionError("variable " + d.variables[i] +
                                    " is constant; correlation undefined");
    }
    for (int i = 0; i < p; ++i)
        for (int j = i; j < p; ++j) {
            const double r = cov(i, j) / std::sqrt(cov(i, i) * cov(j, j));
            corr(i, j) = corr(j, i) = r;
        }
    return corr;
}

double partial_correlation(const Matrix& corr, int u, int v, const std::vector<int>& s) {
    std::vector<int> idx = {u, v};
    idx.insert(idx.end(), s.begin(), s.end());
    const std::size_t k = idx.size();
    Matrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = corr(idx[i], idx[j]);
    Matrix conc;
    try {
        conc = inverse(sub);
    } catch (const std::runtime_error&) {
        for (std::size_t i = 0; i < k; ++i) sub(i, i) += 1e-10;
        try {
            conc = inverse(sub);
        } catch (const std::runtime_error&) {
            throw PreconditionError("singular correlation submatrix in partial correlation");
        }
    }
    const double rho = -conc(0, 1) / std::sqrt(conc(0, 0) * conc(1, 1));
    return std::clamp(rho, -1.0, 1.0);
}

CITestResult fisher_z_test(const Matrix& corr, int n, int u, int v, const std::vector<int>& s) {
    const double dof = static_cast<double>(n) - static_cast<double>(s.size()) - 3.0;
    if (dof <= 0.0)
        throw PreconditionError("insufficient sample for Fisher-z: need n - |S| - 3 > 0");
    double rho = partial_correlation(corr, u, v, s);
    const double cap = 1.0 - 1e-7;
    rho = std::clamp(rho, -cap, cap);
    const double z = 0.5 * std::log((1.0 + rho) / (1.0 - rho));
    const double stat = std::sqrt(dof) * std::abs(z);
    return {stat, normal_two_sided_p(stat)};
}

GSquareResult gsquare(const Dataset& d, int u, int v, const std::vector<int>& s) {
    if (d.kind != DatasetKind::Discrete)
        throw PreconditionError("gsquare requires a discrete dataset");
    const int cu = d.cardinality[u], cv = d.cardinality[v];
    long long strata = 1;
    for (int c : s) strata *= d.cardinality[c];
    const long long dof = static_cast<long long>(cu - 1) * (cv - 1) * strata;
    if (dof <= 0) throw PreconditionError("degenerate contingency table (zero degrees of freedom)");

    // counts[stratum][u-level][v-level], stratum index stride-encoded over s
    std::vector<std::vector<std::vector<double>>> counts(
        strata, std::vector<std::vector<double>>(cu, std::vector<double>(cv, 0.0)));
    for (const auto& row : d.rows) {
        long long key = 0;
        for (int c : s) key = key * d.cardinality[c] + static_cast<long long>(row[c]);
        counts[key][static_cast<int>(row[u])][static_cast<int>(row[v])] += 1.0;
    }

    double g2 = 0.0;
    for (const auto& table : counts) {
        std::vector<double> row_sum(cu, 0.0), col_sum(cv, 0.0);
        double total = 0.0;
        for (int i = 0; i < cu; ++i)
            for (int j = 0; j < cv; ++j) {
                row_sum[i] += table[i][j];
                col_sum[j] += table[i][j];
                total += table[i][j];
            }
        if (total == 0.0) continue;
        for (int i = 0; i < cu; ++i)
            for (int j = 0; j < cv; ++j) {
                const double o = table[i][j];
                if (o == 0.0) continue;
                const double e = row_sum[i] * col_sum[j] / total;
                g2 += 2.0 * o * std::log(o / e);
            }
    }
    if (g2 < 0.0) g2 = 0.0;  // guard tiny negative rounding
    return {g2, static_cast<int>(dof), chi_square_survival(g2, static_cast<double>(dof))};
}

CIKey canonical_ci_key(const std::string& u, const std::string& v,
                       const std::vector<std::string>& s) {
    std::vector<std::string> cond = s;
    std::sort(cond.begin(), cond.end());
    cond.erase(std::unique(cond.begin(), cond.end()), cond.end());
    if (u <= v) return {u, v, std::move(cond)};
    return {v, u, std::move(cond)};
}

bool CISource::query(const std::string& u, const std::string& v,
                     const std::vector<std::string>& s) {
    return query_full(u, v, s).independent;
}

CIDecision CISource::query_full(const std::string& u, const std::string& v,
                                const std::vector<std::string>& s) {
    if (u == v) throw PreconditionError("ci query requires distinct u, v");
    for (const auto& w : s)
        if (w == u || w == v)
            throw PreconditionError("ci query conditioning set must exclude u, v");
    const CIKey key = canonical_ci_key(u, v, s);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    const CIDecision fresh = evaluate(std::get<0>(key), std::get<1>(key), std::get<2>(key));
    std::lock_guard<std::mutex> lock(mutex_);
    const auto [it, inserted] = cache_.emplace(key, fresh);
    if (inserted) ++query_count_;
    return it->second;
}

long long CISource::query_count() const {
    std::lock_guard<std::mutex> lock(mutex_);
    return query_count_;
}

OracleCISource::OracleCISource(ChainGraph truth)
    : CISource(truth.names()), truth_(std::move(truth)) {}

CIDecision OracleCISource::evaluate(const std::string& u, const std::string& v,
                                    const std::vector<std::string>& s) {
    const bool ind = p_separated_aug(truth_, {{u}, {v}, s});
    return {ind, 0.0, ind ? 1.0 : 0.0};
}

GaussianCISource::GaussianCISource(const Dataset& data, double alpha)
    : CISource(data.variables), corr_(correlation_matrix(data)), n_(data.n()), alpha_(alpha) {
    if (data.kind != DatasetKind::Continuous)
        throw PreconditionError("gaussian CI source requires continuous data");
}

GaussianCISource::GaussianCISource(Matrix corr, int n, double alpha,
                                   std::vector<std::string> variables)
    : CISource(std::move(variables)), corr_(std::move(corr)), n_(n), alpha_(alpha) {}

CIDecision GaussianCISource::evaluate(const std::string& u, const std::string& v,
                                      const std::vector<std::string>& s) {
    std::vector<int> cond;
    cond.reserve(s.size());
    int iu = -1, iv = -1;
    for (std::size_t i = 0; i < variables().size(); ++i) {
        if (variables()[i] == u) iu = static_cast<int>(i);
        if (variables()[i] == v) iv = static_cast<int>(i);
    }
    if (iu < 0 || iv < 0) throw PreconditionError("ci query names unknown variable");
    for (const auto& w : s) {
        int iw = -1;
        for (std::size_t i = 0; i < variables().size(); ++i)
            if (variables()[i] == w) iw = static_cast<int>(i);
        if (iw < 0) throw PreconditionError("ci query names unknown variable");
        cond.push_back(iw);
    }
    const CITestResult r = fisher_z_test(corr_, n_, iu, iv, cond);
    return {r.p_value > alpha_, r.statistic, r.p_value};
}

DiscreteCISource::DiscreteCISource(Dataset data, double alpha)
    : CISource(data.variables), data_(std::move(data)), alpha_(alpha) {
    if (data_.kind != DatasetKind::Discrete)
        throw PreconditionError("discrete CI source requires discrete data");
}

CIDecision DiscreteCISource::evaluate(const std::string& u, const std::string& v,
                                      const std::vector<std::string>& s) {
    std::vector<int> cond;
    for (const auto& w : s) cond.push_back(data_.column(w));
    const GSquareResult r = gsquare(data_, data_.column(u), data_.column(v), cond);
    return {r.p_value > alpha_, r.statistic, r.p_value};
}

FixtureCISource::FixtureCISource(std::vector<std::string> variables)
    : CISource(std::move(variables)) {}

FixtureCISource::FixtureCISource(ChainGraph truth)
    : CISource(truth.names()), truth_(std::move(truth)) {}

void FixtureCISource::pin(const std::string& u, const std::string& v,
                          const std::vector<std::string>& s, bool independent) {
    pinned_[canonical_ci_key(u, v, s)] = independent;
}

CIDecision FixtureCISource::evaluate(const std::string& u, const std::string& v,
                                     const std::vector<std::string>& s) {
    const auto it = pinned_.find(canonical_ci_key(u, v, s));
    bool ind;
    if (it != pinned_.end())
        ind = it->second;
    else if (truth_)
        ind = p_separated_aug(*truth_, {{u}, {v}, s});
    else
        ind = false;
    return {ind, 0.0, ind ? 1.0 : 0.0};
}

void SepSetMap::set(const std::string& u, const std::string& v, std::vector<std::string> s) {
    std::sort(s.begin(), s.end());
    map_[key(u, v)] = std::move(s);
}

const std::vector<std::string>* SepSetMap::find(const std::string& u,
                                                const std::string& v) const {
    const auto it = map_.find(key(u, v));
    return it == map_.end() ? nullptr : &it->second;
}

bool SepSetMap::contains(const std::string& u, const std::string& v) const {
    return map_.count(key(u, v)) > 0;
}

std::pair<std::string, std::string> SepSetMap::key(const std::string& u, const std::string& v) {
    return u <= v ? std::make_pair(u, v) : std::make_pair(v, u);
}

}  // namespace ampcg
