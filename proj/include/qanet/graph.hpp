#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qanet/corpus.hpp"

namespace qanet {

/// Undirected edge (a, b) with a positive integer weight.
struct WeightedEdge {
    std::size_t a;
    std::size_t b;
    std::int64_t weight;
};

/**
 * Sparse symmetric nonnegative integer matrix with zero diagonal, stored as
 * CSR with sorted column indices. Nodes carry string labels.
 */
class SymmetricGraph {
public:
    /// Each undirected edge is listed once; self-loops, duplicates and weights <= 0 are rejected.
    SymmetricGraph(std::vector<std::string> labels, const std::vector<WeightedEdge> &edges);

    /// Assemble from already-symmetric CSR rows (used by the projections).
    static SymmetricGraph from_csr(std::vector<std::string> labels, std::vector<std::size_t> row_ptr,
                                   std::vector<std::size_t> cols, std::vector<std::int64_t> weights);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string> &labels() const noexcept { return labels_; }
    std::optional<std::size_t> index_of(std::string_view label) const;

    std::span<const std::size_t> neighbors(std::size_t i) const {
        return {cols_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }
    std::span<const std::int64_t> weights(std::size_t i) const {
        return {weights_.data() + row_ptr_[i], row_ptr_[i + 1] - row_ptr_[i]};
    }
    std::int64_t weight(std::size_t i, std::size_t j) const;

    /// Number of undirected edges.
    std::size_t edge_count() const noexcept { return cols_.size() / 2; }

    /// Upper-triangle edges (a < b) in row-major order.
    std::vector<WeightedEdge> edges() const;

private:
    SymmetricGraph() = default;
    void build_index();

    std::vector<std::string> labels_;
    std::vector<std::size_t> order_; // label-sorted permutation for lookup
    std::vector<std::size_t> row_ptr_{0};
    std::vector<std::size_t> cols_;
    std::vector<std::int64_t> weights_;
};

struct Arc {
    std::size_t src;
    std::size_t dst;
    std::int64_t weight;
};

/**
 * Directed graph over users with positive integer arc weights. Arcs are
 * kept sorted by (src, dst) with in- and out-adjacency indexes.
 */
class DiGraph {
public:
    /// `nodes` must be strictly increasing; duplicate arcs, self-loops and weights <= 0 are rejected.
    DiGraph(std::vector<UserId> nodes, std::vector<Arc> arcs);

    std::size_t size() const noexcept { return nodes_.size(); }
    const std::vector<UserId> &nodes() const noexcept { return nodes_; }
    std::optional<std::size_t> index_of(const UserId &id) const;

    const std::vector<Arc> &arcs() const noexcept { return arcs_; }
    std::size_t arc_count() const noexcept { return arcs_.size(); }

    std::span<const Arc> out_arcs(std::size_t i) const {
        return {arcs_.data() + out_ptr_[i], out_ptr_[i + 1] - out_ptr_[i]};
    }
    /// Indexes into `arcs()` of the arcs entering node i, ordered by source.
    std::span<const std::size_t> in_arc_ids(std::size_t i) const {
        return {in_ids_.data() + in_ptr_[i], in_ptr_[i + 1] - in_ptr_[i]};
    }
    bool has_arc(std::size_t src, std::size_t dst) const;

private:
    std::vector<UserId> nodes_;
    std::vector<Arc> arcs_;
    std::vector<std::size_t> out_ptr_;
    std::vector<std::size_t> in_ptr_;
    std::vector<std::size_t> in_ids_;
};

/// Undirected unweighted graph with sorted adjacency lists and no self-loops.
class SimpleGraph {
public:
    /// Duplicate and reversed pairs are merged; self-loops are rejected.
    SimpleGraph(std::vector<UserId> nodes, const std::vector<std::pair<std::size_t, std::size_t>> &edges);

    std::size_t size() const noexcept { return nodes_.size(); }
    const std::vector<UserId> &nodes() const noexcept { return nodes_; }
    std::span<const std::size_t> neighbors(std::size_t i) const { return adjacency_[i]; }
    std::size_t degree(std::size_t i) const { return adjacency_[i].size(); }
    bool adjacent(std::size_t i, std::size_t j) const;
    std::size_t edge_count() const noexcept { return edge_count_; }

private:
    std::vector<UserId> nodes_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Ignores directions and weights: an edge wherever an arc exists either way.
SimpleGraph to_simple(const DiGraph &g);

} // namespace qanet
