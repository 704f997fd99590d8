#pragma once

// Fixture builders shared by the unit tests and the acceptance runner.

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "qanet/corpus.hpp"
#include "qanet/graph.hpp"

namespace qanet::testing {

inline UserId uid(const std::string &s) { return UserId(s); }

inline std::vector<UserId> ids(std::initializer_list<const char *> names) {
    std::vector<UserId> out;
    for (const auto *n : names)
        out.emplace_back(n);
    return out;
}

inline Question question(std::string text, std::vector<UserId> likers = {}) {
    Question q;
    q.text = std::move(text);
    q.like_count = static_cast<std::int64_t>(likers.size());
    q.likers = std::move(likers);
    return q;
}

inline Profile profile(const std::string &owner, std::vector<Question> questions, bool fully_sampled = true) {
    Profile p{UserId(owner), std::move(questions), fully_sampled};
    return p;
}

inline Corpus corpus_of(std::vector<Profile> profiles) {
    Corpus c;
    for (auto &p : profiles)
        c.add(std::move(p));
    return c;
}

inline Lexicon neg_lex(std::vector<std::string> words) { return Lexicon(Polarity::negative, words); }
inline Lexicon pos_lex(std::vector<std::string> words) { return Lexicon(Polarity::positive, words); }

/// Zero-padded ids so lexicographic order matches numeric order.
inline std::vector<UserId> numbered(std::size_t n, const std::string &prefix = "n") {
    std::vector<UserId> out;
    for (std::size_t i = 0; i < n; ++i) {
        auto s = std::to_string(i);
        out.emplace_back(prefix + std::string(4 - std::min<std::size_t>(4, s.size()), '0') + s);
    }
    return out;
}

/// Dense 0/1 adjacency of a random digraph without self-loops.
inline std::vector<std::vector<int>> random_digraph(std::mt19937_64 &rng, std::size_t n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && coin(rng))
                a[i][j] = 1;
    return a;
}

inline DiGraph to_digraph(const std::vector<std::vector<int>> &a) {
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            if (a[i][j] > 0)
                arcs.push_back({i, j, a[i][j]});
    return DiGraph(numbered(a.size()), arcs);
}

/// Random undirected 0/1 adjacency (symmetric, zero diagonal).
inline std::vector<std::vector<int>> random_undirected(std::mt19937_64 &rng, std::size_t n, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (coin(rng))
                a[i][j] = a[j][i] = 1;
    return a;
}

inline SimpleGraph to_simple_graph(const std::vector<std::vector<int>> &a) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j)
            if (a[i][j])
                edges.emplace_back(i, j);
    return SimpleGraph(numbered(a.size()), edges);
}

/// Random connected weighted graph: a random spanning tree plus extra edges.
inline std::vector<std::vector<std::int64_t>> random_connected_weighted(std::mt19937_64 &rng, std::size_t n,
                                                                        double p, std::int64_t max_w) {
    std::vector<std::vector<std::int64_t>> w(n, std::vector<std::int64_t>(n, 0));
    std::uniform_int_distribution<std::int64_t> weight(1, max_w);
    for (std::size_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> parent(0, i - 1);
        const auto j = parent(rng);
        w[i][j] = w[j][i] = weight(rng);
    }
    std::bernoulli_distribution coin(p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (w[i][j] == 0 && coin(rng))
                w[i][j] = w[j][i] = weight(rng);
    return w;
}

inline SymmetricGraph to_symmetric(const std::vector<std::vector<std::int64_t>> &w) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < w.size(); ++i)
        labels.push_back("v" + std::to_string(i));
    std::vector<WeightedEdge> edges;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (w[i][j] > 0)
                edges.push_back({i, j, w[i][j]});
    return SymmetricGraph(labels, edges);
}

} // namespace qanet::testing
