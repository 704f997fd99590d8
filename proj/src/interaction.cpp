#include "qanet/interaction.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "qanet/error.hpp"
#include "qanet/format.hpp"

namespace qanet {

InteractionGraph::InteractionGraph(std::vector<UserId> nodes, std::vector<InteractionEdge> edges, std::size_t top_k)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), top_k_(top_k) {
    for (std::size_t k = 1; k < nodes_.size(); ++k)
        if (!(nodes_[k - 1] < nodes_[k]))
            throw ValidationError("interaction graph nodes must be strictly increasing");
    for (const auto &e : edges_) {
        if (e.src >= nodes_.size() || e.dst >= nodes_.size())
            throw ValidationError("edge endpoint out of range");
        if (e.src == e.dst)
            throw ValidationError("self-edge in interaction graph");
        if (e.n_neg < 0 || e.n_nonneg < 0 || e.n_neg + e.n_nonneg < 1)
            throw ValidationError("interaction edge needs a positive weight");
    }
    std::sort(edges_.begin(), edges_.end(), [](const InteractionEdge &a, const InteractionEdge &b) {
        return a.src != b.src ? a.src < b.src : a.dst < b.dst;
    });
    for (std::size_t k = 1; k < edges_.size(); ++k)
        if (edges_[k].src == edges_[k - 1].src && edges_[k].dst == edges_[k - 1].dst)
            throw ValidationError("duplicate interaction edge");
}

std::optional<std::size_t> InteractionGraph::index_of(const UserId &id) const {
    const auto it = std::lower_bound(nodes_.begin(), nodes_.end(), id);
    if (it == nodes_.end() || *it != id)
        return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
}

InteractionGraph build_interaction_graph(const Corpus &c, const Lexicon &neg_words, std::size_t top_k) {
    std::vector<UserId> nodes;
    for (const auto &[id, p] : c.profiles())
        if (p.fully_sampled)
            nodes.push_back(id);

    auto index = [&](const UserId &id) -> std::optional<std::size_t> {
        const auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
        if (it == nodes.end() || *it != id)
            return std::nullopt;
        return static_cast<std::size_t>(it - nodes.begin());
    };

    std::map<std::pair<std::size_t, std::size_t>, std::pair<std::int64_t, std::int64_t>> weights;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
        const Profile &p = *c.find(nodes[j]);
        const std::size_t take = std::min(top_k, p.questions.size());
        for (std::size_t k = 0; k < take; ++k) {
            const Question &q = p.questions[k];
            if (q.likers.empty())
                continue;
            const bool negative = mentions_any(q.text, neg_words);
            for (const auto &liker : q.likers) {
                const auto i = index(liker);
                if (!i || *i == j)
                    continue;
                auto &w = weights[{*i, j}];
                (negative ? w.first : w.second) += 1;
            }
        }
    }
    std::vector<InteractionEdge> edges;
    edges.reserve(weights.size());
    for (const auto &[key, w] : weights)
        edges.push_back({key.first, key.second, w.first, w.second});
    return InteractionGraph(std::move(nodes), std::move(edges), top_k);
}

SplitGraphs split_graph(const InteractionGraph &u) {
    std::vector<Arc> neg, nonneg;
    for (const auto &e : u.edges()) {
        if (e.n_neg > 0)
            neg.push_back({e.src, e.dst, e.n_neg});
        if (e.n_nonneg > 0)
            nonneg.push_back({e.src, e.dst, e.n_nonneg});
    }
    return {DiGraph(u.nodes(), std::move(neg)), DiGraph(u.nodes(), std::move(nonneg))};
}

InteractionGraph merge_split(const SplitGraphs &s, std::size_t top_k) {
    if (s.negative.nodes() != s.nonnegative.nodes())
        throw ValidationError("split graphs are over different node sets");
    std::map<std::pair<std::size_t, std::size_t>, std::pair<std::int64_t, std::int64_t>> weights;
    for (const auto &a : s.negative.arcs())
        weights[{a.src, a.dst}].first += a.weight;
    for (const auto &a : s.nonnegative.arcs())
        weights[{a.src, a.dst}].second += a.weight;
    std::vector<InteractionEdge> edges;
    for (const auto &[key, w] : weights)
        edges.push_back({key.first, key.second, w.first, w.second});
    return InteractionGraph(s.negative.nodes(), std::move(edges), top_k);
}

DiGraph total_graph(const InteractionGraph &u) {
    std::vector<Arc> arcs;
    arcs.reserve(u.edges().size());
    for (const auto &e : u.edges())
        arcs.push_back({e.src, e.dst, e.n_neg + e.n_nonneg});
    return DiGraph(u.nodes(), std::move(arcs));
}

SimpleGraph to_simple(const InteractionGraph &u) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    edges.reserve(u.edges().size());
    for (const auto &e : u.edges())
        edges.emplace_back(e.src, e.dst);
    return SimpleGraph(u.nodes(), edges);
}

void write_edge_list(std::ostream &out, const InteractionGraph &u) {
    out << "src,dst,n_neg,n_nonneg\n";
    for (const auto &e : u.edges())
        out << csv_field(u.nodes()[e.src].str()) << ',' << csv_field(u.nodes()[e.dst].str()) << ',' << e.n_neg
            << ',' << e.n_nonneg << '\n';
}

} // namespace qanet
