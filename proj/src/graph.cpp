#include "qanet/graph.hpp"

#include <algorithm>
#include <numeric>

#include "qanet/error.hpp"

namespace qanet {

SymmetricGraph::SymmetricGraph(std::vector<std::string> labels, const std::vector<WeightedEdge> &edges)
    : labels_(std::move(labels)) {
    const std::size_t n = labels_.size();
    std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> rows(n);
    for (const auto &e : edges) {
        if (e.a >= n || e.b >= n)
            throw ValidationError("edge endpoint out of range");
        if (e.a == e.b)
            throw ValidationError("self-loop in symmetric graph");
        if (e.weight <= 0)
            throw ValidationError("edge weight must be positive");
        rows[e.a].emplace_back(e.b, e.weight);
        rows[e.b].emplace_back(e.a, e.weight);
    }
    row_ptr_.assign(1, 0);
    for (auto &row : rows) {
        std::sort(row.begin(), row.end());
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (k > 0 && row[k].first == row[k - 1].first)
                throw ValidationError("duplicate edge in symmetric graph");
            cols_.push_back(row[k].first);
            weights_.push_back(row[k].second);
        }
        row_ptr_.push_back(cols_.size());
    }
    build_index();
}

SymmetricGraph SymmetricGraph::from_csr(std::vector<std::string> labels, std::vector<std::size_t> row_ptr,
                                        std::vector<std::size_t> cols, std::vector<std::int64_t> weights) {
    if (row_ptr.size() != labels.size() + 1 || row_ptr.back() != cols.size() || cols.size() != weights.size())
        throw ValidationError("inconsistent CSR arrays");
    SymmetricGraph g;
    g.labels_ = std::move(labels);
    g.row_ptr_ = std::move(row_ptr);
    g.cols_ = std::move(cols);
    g.weights_ = std::move(weights);
    g.build_index();
    return g;
}

void SymmetricGraph::build_index() {
    order_.resize(labels_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return labels_[a] < labels_[b]; });
    for (std::size_t k = 1; k < order_.size(); ++k)
        if (labels_[order_[k]] == labels_[order_[k - 1]])
            throw ValidationError("duplicate node label '" + labels_[order_[k]] + "'");
}

std::optional<std::size_t> SymmetricGraph::index_of(std::string_view label) const {
    const auto it = std::lower_bound(order_.begin(), order_.end(), label,
                                     [&](std::size_t i, std::string_view l) { return labels_[i] < l; });
    if (it == order_.end() || labels_[*it] != label)
        return std::nullopt;
    return *it;
}

std::int64_t SymmetricGraph::weight(std::size_t i, std::size_t j) const {
    const auto row = neighbors(i);
    const auto it = std::lower_bound(row.begin(), row.end(), j);
    if (it == row.end() || *it != j)
        return 0;
    return weights(i)[static_cast<std::size_t>(it - row.begin())];
}

std::vector<WeightedEdge> SymmetricGraph::edges() const {
    std::vector<WeightedEdge> out;
    out.reserve(edge_count());
    for (std::size_t i = 0; i < size(); ++i) {
        const auto nb = neighbors(i);
        const auto w = weights(i);
        for (std::size_t k = 0; k < nb.size(); ++k)
            if (nb[k] > i)
                out.push_back({i, nb[k], w[k]});
    }
    return out;
}

DiGraph::DiGraph(std::vector<UserId> nodes, std::vector<Arc> arcs) : nodes_(std::move(nodes)), arcs_(std::move(arcs)) {
    const std::size_t n = nodes_.size();
    for (std::size_t k = 1; k < n; ++k)
        if (!(nodes_[k - 1] < nodes_[k]))
            throw ValidationError("digraph nodes must be strictly increasing");
    for (const auto &a : arcs_) {
        if (a.src >= n || a.dst >= n)
            throw ValidationError("arc endpoint out of range");
        if (a.src == a.dst)
            throw ValidationError("self-loop in directed graph");
        if (a.weight <= 0)
            throw ValidationError("arc weight must be positive");
    }
    std::sort(arcs_.begin(), arcs_.end(),
              [](const Arc &x, const Arc &y) { return x.src != y.src ? x.src < y.src : x.dst < y.dst; });
    for (std::size_t k = 1; k < arcs_.size(); ++k)
        if (arcs_[k].src == arcs_[k - 1].src && arcs_[k].dst == arcs_[k - 1].dst)
            throw ValidationError("duplicate arc");

    out_ptr_.assign(n + 1, 0);
    in_ptr_.assign(n + 1, 0);
    for (const auto &a : arcs_) {
        ++out_ptr_[a.src + 1];
        ++in_ptr_[a.dst + 1];
    }
    std::partial_sum(out_ptr_.begin(), out_ptr_.end(), out_ptr_.begin());
    std::partial_sum(in_ptr_.begin(), in_ptr_.end(), in_ptr_.begin());
    in_ids_.resize(arcs_.size());
    std::vector<std::size_t> fill(in_ptr_.begin(), in_ptr_.end() - 1);
    // Arcs are src-sorted, so each in-list comes out ordered by source.
    for (std::size_t k = 0; k < arcs_.size(); ++k)
        in_ids_[fill[arcs_[k].dst]++] = k;
}

std::optional<std::size_t> DiGraph::index_of(const UserId &id) const {
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
    if (it == nodes_.end() || *it != id)
        return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
}

bool DiGraph::has_arc(std::size_t src, std::size_t dst) const {
    const auto out = out_arcs(src);
    const auto it = std::lower_bound(out.begin(), out.end(), dst, [](const Arc &a, std::size_t d) { return a.dst < d; });
    return it != out.end() && it->dst == dst;
}

SimpleGraph::SimpleGraph(std::vector<UserId> nodes, const std::vector<std::pair<std::size_t, std::size_t>> &edges)
    : nodes_(std::move(nodes)), adjacency_(nodes_.size()) {
    for (const auto &[a, b] : edges) {
        if (a >= nodes_.size() || b >= nodes_.size())
            throw ValidationError("edge endpoint out of range");
        if (a == b)
            throw ValidationError("self-loop in simple graph");
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    for (auto &row : adjacency_) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        edge_count_ += row.size();
    }
    edge_count_ /= 2;
}

bool SimpleGraph::adjacent(std::size_t i, std::size_t j) const {
    return std::binary_search(adjacency_[i].begin(), adjacency_[i].end(), j);
}

SimpleGraph to_simple(const DiGraph &g) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(g.arc_count());
    for (const auto &a : g.arcs())
        edges.emplace_back(a.src, a.dst);
    return SimpleGraph(g.nodes(), edges);
}

} // namespace qanet
