#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qanet/corpus.hpp"
#include "qanet/graph.hpp"

namespace qanet {

/// Directed like-edge src -> dst: src liked n_neg negative and n_nonneg other questions of dst.
struct InteractionEdge {
    std::size_t src;
    std::size_t dst;
    std::int64_t n_neg;
    std::int64_t n_nonneg;
};

class InteractionGraph {
public:
    /// Nodes strictly increasing; edges unique, non-self, with n_neg + n_nonneg >= 1.
    InteractionGraph(std::vector<UserId> nodes, std::vector<InteractionEdge> edges, std::size_t top_k);

    const std::vector<UserId> &nodes() const noexcept { return nodes_; }
    /// Sorted by (src, dst).
    const std::vector<InteractionEdge> &edges() const noexcept { return edges_; }
    std::size_t top_k() const noexcept { return top_k_; }
    std::optional<std::size_t> index_of(const UserId &id) const;

private:
    std::vector<UserId> nodes_;
    std::vector<InteractionEdge> edges_;
    std::size_t top_k_;
};

/**
 * Like graph over the fully sampled profiles. For every fully sampled owner j,
 * each of its `top_k` most-liked questions adds 1 to the edge i -> j for every
 * liker i that is itself fully sampled and distinct from j; the negative
 * component counts questions containing a word of `neg_words`.
 */
InteractionGraph build_interaction_graph(const Corpus &c, const Lexicon &neg_words, std::size_t top_k = 15);

struct SplitGraphs {
    DiGraph negative;
    DiGraph nonnegative;
};

/// Componentwise split; zero-weight arcs are dropped.
SplitGraphs split_graph(const InteractionGraph &u);

/// Inverse of split_graph.
InteractionGraph merge_split(const SplitGraphs &s, std::size_t top_k);

/// Scalar graph weighted by n_neg + n_nonneg.
DiGraph total_graph(const InteractionGraph &u);

SimpleGraph to_simple(const InteractionGraph &u);

/// CSV edge list: header `src,dst,n_neg,n_nonneg`, rows in (src, dst) order.
void write_edge_list(std::ostream &out, const InteractionGraph &u);

} // namespace qanet
