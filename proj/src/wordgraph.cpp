#include "qanet/wordgraph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <thread>
#include <unordered_map>

#include "qanet/error.hpp"
#include "qanet/format.hpp"
#include "qanet/text.hpp"

namespace qanet {

BipartiteGraph::BipartiteGraph(std::vector<std::string> words, std::vector<UserId> users,
                               std::vector<std::vector<std::size_t>> rows)
    : words_(std::move(words)), users_(std::move(users)), rows_(std::move(rows)) {
    if (rows_.size() != words_.size())
        throw ValidationError("bipartite graph needs one row per word");
    for (auto &row : rows_) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        if (!row.empty() && row.back() >= users_.size())
            throw ValidationError("user index out of range");
    }
}

bool BipartiteGraph::contains(std::size_t w, std::size_t u) const {
    return std::binary_search(rows_[w].begin(), rows_[w].end(), u);
}

std::size_t BipartiteGraph::nnz() const noexcept {
    std::size_t n = 0;
    for (const auto &row : rows_)
        n += row.size();
    return n;
}

std::vector<std::vector<std::size_t>> BipartiteGraph::columns() const {
    std::vector<std::vector<std::size_t>> cols(users_.size());
    for (std::size_t w = 0; w < rows_.size(); ++w)
        for (const auto u : rows_[w])
            cols[u].push_back(w);
    return cols;
}

BipartiteGraph build_bipartite(const Corpus &c, const Lexicon &lex) {
    std::vector<std::string> words(lex.words().begin(), lex.words().end());
    std::unordered_map<std::string_view, std::size_t> word_index;
    for (std::size_t i = 0; i < words.size(); ++i)
        word_index.emplace(words[i], i);

    std::vector<UserId> users;
    users.reserve(c.size());
    std::vector<std::vector<std::size_t>> rows(words.size());
    for (const auto &[id, p] : c.profiles()) {
        const std::size_t u = users.size();
        users.push_back(id);
        for (const auto &q : p.questions)
            for (const auto &token : tokenize(q.text))
                if (const auto it = word_index.find(token); it != word_index.end())
                    if (rows[it->second].empty() || rows[it->second].back() != u)
                        rows[it->second].push_back(u);
    }
    return BipartiteGraph(std::move(words), std::move(users), std::move(rows));
}

namespace {

struct CsrRows {
    std::vector<std::vector<std::size_t>> cols;
    std::vector<std::vector<std::int64_t>> weights;
};

// out[i][j] = |rows[i] ∩ rows[j]| for i != j, using `through[k]` = the rows holding k.
void project_range(const std::vector<std::vector<std::size_t>> &rows,
                   const std::vector<std::vector<std::size_t>> &through, std::size_t begin, std::size_t end,
                   CsrRows &out) {
    std::vector<std::int64_t> counter(rows.size(), 0);
    std::vector<std::size_t> touched;
    for (std::size_t i = begin; i < end; ++i) {
        touched.clear();
        for (const auto k : rows[i])
            for (const auto j : through[k]) {
                if (j == i)
                    continue;
                if (counter[j]++ == 0)
                    touched.push_back(j);
            }
        std::sort(touched.begin(), touched.end());
        auto &cols = out.cols[i];
        auto &weights = out.weights[i];
        cols.reserve(touched.size());
        weights.reserve(touched.size());
        for (const auto j : touched) {
            cols.push_back(j);
            weights.push_back(counter[j]);
            counter[j] = 0;
        }
    }
}

SymmetricGraph project(std::vector<std::string> labels, const std::vector<std::vector<std::size_t>> &rows,
                       const std::vector<std::vector<std::size_t>> &through, unsigned threads) {
    const std::size_t n = rows.size();
    CsrRows parts{std::vector<std::vector<std::size_t>>(n), std::vector<std::vector<std::int64_t>>(n)};
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        project_range(rows, through, 0, n, parts);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n + workers - 1) / workers;
        for (std::size_t begin = 0; begin < n; begin += chunk)
            pool.emplace_back([&, begin] { project_range(rows, through, begin, std::min(n, begin + chunk), parts); });
    }
    std::vector<std::size_t> row_ptr{0};
    std::vector<std::size_t> cols;
    std::vector<std::int64_t> weights;
    for (std::size_t i = 0; i < n; ++i) {
        cols.insert(cols.end(), parts.cols[i].begin(), parts.cols[i].end());
        weights.insert(weights.end(), parts.weights[i].begin(), parts.weights[i].end());
        row_ptr.push_back(cols.size());
    }
    return SymmetricGraph::from_csr(std::move(labels), std::move(row_ptr), std::move(cols), std::move(weights));
}

} // namespace

SymmetricGraph project_words(const BipartiteGraph &b, unsigned threads) {
    std::vector<std::vector<std::size_t>> rows(b.words().size());
    for (std::size_t w = 0; w < rows.size(); ++w)
        rows[w].assign(b.row(w).begin(), b.row(w).end());
    return project(b.words(), rows, b.columns(), threads);
}

SymmetricGraph project_users(const BipartiteGraph &b, unsigned threads) {
    std::vector<std::vector<std::size_t>> rows(b.words().size());
    for (std::size_t w = 0; w < rows.size(); ++w)
        rows[w].assign(b.row(w).begin(), b.row(w).end());
    std::vector<std::string> labels;
    labels.reserve(b.users().size());
    for (const auto &u : b.users())
        labels.push_back(u.str());
    return project(std::move(labels), b.columns(), rows, threads);
}

std::optional<double> CentralityScores::score(std::string_view label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label)
            return scores[i];
    return std::nullopt;
}

namespace {

std::vector<std::vector<std::size_t>> components(const SymmetricGraph &g) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(g.size(), false);
    for (std::size_t s = 0; s < g.size(); ++s) {
        if (seen[s] || g.neighbors(s).empty())
            continue;
        std::vector<std::size_t> comp{s};
        seen[s] = true;
        for (std::size_t head = 0; head < comp.size(); ++head)
            for (const auto v : g.neighbors(comp[head]))
                if (!seen[v]) {
                    seen[v] = true;
                    comp.push_back(v);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

struct ComponentVector {
    std::vector<double> x; // indexed like the component's node list
    double eigenvalue;
    int iterations;
};

ComponentVector perron_vector(const SymmetricGraph &g, const std::vector<std::size_t> &comp, double tol,
                              int max_iter) {
    std::unordered_map<std::size_t, std::size_t> local;
    for (std::size_t k = 0; k < comp.size(); ++k)
        local.emplace(comp[k], k);
    // Component-local CSR so the inner loop does not hash.
    std::vector<std::size_t> ptr{0};
    std::vector<std::size_t> cols;
    std::vector<double> vals;
    for (const auto v : comp) {
        const auto nb = g.neighbors(v);
        const auto w = g.weights(v);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            cols.push_back(local.at(nb[k]));
            vals.push_back(static_cast<double>(w[k]));
        }
        ptr.push_back(cols.size());
    }

    const std::size_t n = comp.size();
    std::vector<double> x(n, 1.0), y(n);
    double residual = 0;
    for (int it = 1; it <= max_iter; ++it) {
        double peak = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double acc = x[i];
            for (std::size_t k = ptr[i]; k < ptr[i + 1]; ++k)
                acc += vals[k] * x[cols[k]];
            y[i] = acc;
            peak = std::max(peak, acc);
        }
        residual = 0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] /= peak;
            residual = std::max(residual, std::abs(y[i] - x[i]));
        }
        x.swap(y);
        if (residual < tol) {
            double num = 0, den = 0;
            for (std::size_t i = 0; i < n; ++i) {
                double ax = 0;
                for (std::size_t k = ptr[i]; k < ptr[i + 1]; ++k)
                    ax += vals[k] * x[cols[k]];
                num += x[i] * ax;
                den += x[i] * x[i];
            }
            return {std::move(x), num / den, it};
        }
    }
    throw ConvergenceError(max_iter, residual);
}

} // namespace

CentralityScores eigenvector_centrality(const SymmetricGraph &g, double tol, int max_iter) {
    if (!(tol > 0))
        throw ValidationError("centrality tolerance must be positive");
    if (max_iter < 1)
        throw ValidationError("centrality max_iter must be at least 1");

    CentralityScores out{g.labels(), std::vector<double>(g.size(), 0.0), 0, 0.0};
    const auto comps = components(g);
    std::vector<ComponentVector> vectors;
    vectors.reserve(comps.size());
    for (const auto &comp : comps) {
        vectors.push_back(perron_vector(g, comp, tol, max_iter));
        out.iterations = std::max(out.iterations, vectors.back().iterations);
        out.eigenvalue = std::max(out.eigenvalue, vectors.back().eigenvalue);
    }
    // Components whose spectral radius ties the maximum (to rounding) all keep their scores.
    const double cutoff = out.eigenvalue * (1.0 - 1e-9);
    for (std::size_t c = 0; c < comps.size(); ++c) {
        if (vectors[c].eigenvalue < cutoff)
            continue;
        for (std::size_t k = 0; k < comps[c].size(); ++k)
            out.scores[comps[c][k]] = vectors[c].x[k];
    }
    return out;
}

Lexicon WordSet::lexicon() const {
    std::vector<std::string> list;
    list.reserve(words.size());
    for (const auto &w : words)
        list.push_back(w.word);
    return Lexicon(polarity, list);
}

WordSet select_top_words(const CentralityScores &s, Polarity polarity, double threshold, std::size_t cap) {
    WordSet ws{polarity, threshold, cap, {}};
    for (std::size_t i = 0; i < s.labels.size(); ++i)
        if (s.scores[i] > 0.0 && s.scores[i] > threshold)
            ws.words.push_back({s.labels[i], s.scores[i]});
    std::sort(ws.words.begin(), ws.words.end(), [](const ScoredWord &a, const ScoredWord &b) {
        return a.score != b.score ? a.score > b.score : a.word < b.word;
    });
    if (ws.words.size() > cap)
        ws.words.resize(cap);
    if (ws.words.empty())
        throw ValidationError("no word scores above threshold " + format_double(threshold));
    return ws;
}

void write_wordset(std::ostream &out, const WordSet &ws) {
    out << "# polarity: " << to_string(ws.polarity) << '\n';
    out << "# threshold: " << format_double(ws.threshold) << '\n';
    out << "# cap: " << ws.cap << '\n';
    for (const auto &w : ws.words)
        out << w.word << '\t' << format_double(w.score) << '\n';
}

WordSet parse_wordset(std::istream &in) {
    WordSet ws;
    std::map<std::string, std::string, std::less<>> header;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line.front() == '#') {
            const auto colon = line.find(':');
            if (colon == std::string::npos)
                continue;
            auto key = line.substr(1, colon - 1);
            auto value = line.substr(colon + 1);
            key.erase(0, key.find_first_not_of(' '));
            value.erase(0, value.find_first_not_of(' '));
            header[key] = value;
            continue;
        }
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError(line_no, "expected '<word>\\t<score>'");
        const auto score = parse_double(std::string_view(line).substr(tab + 1));
        if (!score)
            throw ParseError(line_no, "bad score");
        ws.words.push_back({line.substr(0, tab), *score});
    }
    if (const auto it = header.find("polarity"); it != header.end())
        ws.polarity = parse_polarity(it->second);
    else
        throw ParseError(line_no, "word set is missing the '# polarity:' header");
    if (const auto it = header.find("threshold"); it != header.end()) {
        const auto t = parse_double(it->second);
        if (!t)
            throw ParseError(line_no, "bad threshold header");
        ws.threshold = *t;
    }
    if (const auto it = header.find("cap"); it != header.end())
        ws.cap = std::stoul(it->second);
    if (ws.words.empty())
        throw ParseError(line_no, "word set is empty");
    return ws;
}

WordSet load_wordset(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open word set file '" + path.string() + "'");
    return parse_wordset(in);
}

Neighborhood word_neighborhood(const SymmetricGraph &w, std::string_view core, const CentralityScores &s) {
    const auto idx = w.index_of(core);
    if (!idx)
        throw ValidationError("word '" + std::string(core) + "' is not in the graph");
    auto centrality = [&](std::size_t i) { return i < s.scores.size() ? s.scores[i] : 0.0; };
    if (s.labels != w.labels())
        throw ValidationError("centrality scores do not belong to this graph");
    Neighborhood out{std::string(core), centrality(*idx), {}};
    const auto nb = w.neighbors(*idx);
    const auto wt = w.weights(*idx);
    for (std::size_t k = 0; k < nb.size(); ++k)
        out.neighbors.push_back({w.labels()[nb[k]], wt[k], centrality(nb[k])});
    std::sort(out.neighbors.begin(), out.neighbors.end(), [](const NeighborRecord &a, const NeighborRecord &b) {
        return a.weight != b.weight ? a.weight > b.weight : a.word < b.word;
    });
    return out;
}

FrequencyVector cooccurrence_distribution(const Corpus &c, std::string_view core, const WordSet &ws) {
    if (ws.words.empty())
        throw ValidationError("cooccurrence_distribution requires a non-empty word set");
    std::unordered_map<std::string_view, std::size_t> slot;
    for (std::size_t i = 0; i < ws.words.size(); ++i)
        slot.emplace(ws.words[i].word, i);

    const std::string core_word = to_lower(core);
    std::vector<std::int64_t> totals(ws.words.size(), 0);
    std::vector<std::int64_t> counts(ws.words.size());
    std::size_t matching = 0;
    for (const auto &[id, p] : c.profiles()) {
        std::fill(counts.begin(), counts.end(), 0);
        bool has_core = false;
        for (const auto &q : p.questions)
            for (const auto &token : tokenize(q.text)) {
                has_core = has_core || token == core_word;
                if (const auto it = slot.find(token); it != slot.end())
                    ++counts[it->second];
            }
        if (!has_core)
            continue;
        ++matching;
        for (std::size_t i = 0; i < counts.size(); ++i)
            totals[i] += counts[i];
    }
    if (matching == 0)
        throw ValidationError("no profile mentions '" + core_word + "'");
    FrequencyVector fv{core_word, matching, {}};
    for (std::size_t i = 0; i < ws.words.size(); ++i)
        fv.entries.emplace_back(ws.words[i].word, static_cast<double>(totals[i]) / static_cast<double>(matching));
    return fv;
}

} // namespace qanet
