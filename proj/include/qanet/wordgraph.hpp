#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qanet/corpus.hpp"
#include "qanet/graph.hpp"

namespace qanet {

/**
 * Binary word x user incidence matrix B. B[w][u] = 1 iff word w occurs in at
 * least one question on u's profile. Rows follow the lexicon's (sorted)
 * order, columns the corpus' owner order.
 */
class BipartiteGraph {
public:
    /// `rows[w]` lists the user indexes incident to word w; order and duplicates are normalized.
    BipartiteGraph(std::vector<std::string> words, std::vector<UserId> users,
                   std::vector<std::vector<std::size_t>> rows);

    const std::vector<std::string> &words() const noexcept { return words_; }
    const std::vector<UserId> &users() const noexcept { return users_; }
    std::span<const std::size_t> row(std::size_t w) const { return rows_[w]; }
    bool contains(std::size_t w, std::size_t u) const;
    std::size_t nnz() const noexcept;

    /// Column view: for each user, the sorted word indexes incident to it.
    std::vector<std::vector<std::size_t>> columns() const;

private:
    std::vector<std::string> words_;
    std::vector<UserId> users_;
    std::vector<std::vector<std::size_t>> rows_;
};

BipartiteGraph build_bipartite(const Corpus &c, const Lexicon &lex);

/// W = B Bᵀ with the diagonal dropped: W[i][j] counts profiles holding both words.
/// Rows are split over `threads` workers; the result does not depend on the split.
SymmetricGraph project_words(const BipartiteGraph &b, unsigned threads = 1);

/// Bᵀ B with the diagonal dropped: users linked by the number of lexicon words they share.
SymmetricGraph project_users(const BipartiteGraph &b, unsigned threads = 1);

struct CentralityScores {
    std::vector<std::string> labels;
    std::vector<double> scores;
    int iterations = 0;
    /// Largest adjacency eigenvalue found; 0 for an edgeless graph.
    double eigenvalue = 0;

    std::optional<double> score(std::string_view label) const;
};

/**
 * Eigenvector centrality scaled so the largest score is 1.
 *
 * Power iteration runs per connected component on A + I (same eigenvectors
 * as A, but no oscillation on bipartite components), starting from the
 * all-ones vector and stopping once successive max-normalized iterates differ
 * by less than `tol` in max-norm. Only components attaining the largest
 * eigenvalue keep nonzero scores; other components and isolated nodes score
 * exactly 0. Throws ConvergenceError after `max_iter` iterations.
 */
CentralityScores eigenvector_centrality(const SymmetricGraph &g, double tol = 1e-10, int max_iter = 10000);

struct ScoredWord {
    std::string word;
    double score;
};

/// Selected high-centrality words, in descending score order.
struct WordSet {
    Polarity polarity = Polarity::negative;
    double threshold = 0.5;
    std::size_t cap = 80;
    std::vector<ScoredWord> words;

    Lexicon lexicon() const;
};

/// Keep words scoring strictly above `threshold`, then the `cap` best. Ties go to the
/// lexicographically smaller word. Throws ValidationError when nothing survives.
WordSet select_top_words(const CentralityScores &s, Polarity polarity, double threshold = 0.5,
                         std::size_t cap = 80);

void write_wordset(std::ostream &out, const WordSet &ws);
WordSet parse_wordset(std::istream &in);
WordSet load_wordset(const std::filesystem::path &path);

struct NeighborRecord {
    std::string word;
    std::int64_t weight;
    double centrality;
};

struct Neighborhood {
    std::string core;
    double core_centrality = 0;
    /// Heaviest edge first, ties by word.
    std::vector<NeighborRecord> neighbors;
};

Neighborhood word_neighborhood(const SymmetricGraph &w, std::string_view core, const CentralityScores &s);

struct FrequencyVector {
    std::string core;
    std::size_t matching_profiles = 0;
    /// One entry per word of the word set, in word-set order.
    std::vector<std::pair<std::string, double>> entries;
};

/// Mean per-profile occurrence count of each word-set word over the profiles whose
/// questions mention `core`. Throws ValidationError when no profile mentions it.
FrequencyVector cooccurrence_distribution(const Corpus &c, std::string_view core, const WordSet &ws);

} // namespace qanet
