#include "qanet/metrics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>

#include "qanet/error.hpp"

namespace qanet {

double DegreeVector::sum() const {
    return std::accumulate(values.begin(), values.end(), 0.0);
}

DegreeVector degree_vector(const DiGraph &g, Direction direction, bool weighted) {
    DegreeVector d{direction, weighted, g.nodes(), std::vector<double>(g.size(), 0.0)};
    for (const auto &a : g.arcs()) {
        const std::size_t node = direction == Direction::in ? a.dst : a.src;
        d.values[node] += weighted ? static_cast<double>(a.weight) : 1.0;
    }
    return d;
}

Curve ccdf(std::span<const double> values) {
    if (values.empty())
        throw ValidationError("ccdf of an empty sample");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const auto n = static_cast<double>(sorted.size());
    Curve curve;
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (i == 0 || sorted[i] != sorted[i - 1])
            curve.push_back({sorted[i], static_cast<double>(sorted.size() - i) / n});
    return curve;
}

double reciprocity(const DiGraph &g) {
    if (g.arc_count() == 0)
        throw ValidationError("reciprocity of a graph without edges");
    std::size_t mutual = 0;
    for (const auto &a : g.arcs())
        mutual += g.has_arc(a.dst, a.src);
    return static_cast<double>(mutual) / static_cast<double>(g.arc_count());
}

std::vector<std::optional<double>> node_reciprocity(const DiGraph &g) {
    std::vector<std::optional<double>> out(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto arcs = g.out_arcs(i);
        if (arcs.empty())
            continue;
        std::size_t mutual = 0;
        for (const auto &a : arcs)
            mutual += g.has_arc(a.dst, i);
        out[i] = static_cast<double>(mutual) / static_cast<double>(arcs.size());
    }
    return out;
}

std::vector<ReciprocityBin> mean_reciprocity_by_outdegree(const DiGraph &g) {
    if (g.arc_count() == 0)
        throw ValidationError("reciprocity of a graph without edges");
    const auto recip = node_reciprocity(g);
    const auto out_deg = degree_vector(g, Direction::out, true);
    std::map<int, std::pair<double, std::size_t>> bins;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!recip[i])
            continue;
        const auto d = static_cast<std::uint64_t>(out_deg.values[i]);
        auto &bin = bins[static_cast<int>(std::bit_width(d)) - 1];
        bin.first += *recip[i];
        ++bin.second;
    }
    std::vector<ReciprocityBin> out;
    for (const auto &[exp, acc] : bins)
        out.push_back({std::ldexp(1.0, exp), std::ldexp(1.0, exp + 1), acc.first / static_cast<double>(acc.second),
                       acc.second});
    return out;
}

namespace {

void require_same_nodes(const DegreeVector &a, const DegreeVector &b) {
    if (a.nodes != b.nodes || a.values.size() != a.nodes.size() || b.values.size() != b.nodes.size())
        throw ValidationError("degree vectors are over different node sets");
}

std::vector<std::size_t> ranking(const DegreeVector &d) {
    std::vector<std::size_t> order(d.values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (d.values[a] != d.values[b])
            return d.values[a] > d.values[b];
        return d.nodes[a] < d.nodes[b];
    });
    return order;
}

} // namespace

double top_overlap(const DegreeVector &in, const DegreeVector &out, double percent) {
    require_same_nodes(in, out);
    if (in.nodes.empty())
        throw ValidationError("top_overlap on an empty node set");
    if (!(percent > 0.0 && percent <= 100.0))
        throw ValidationError("top_overlap percentage must be in (0, 100]");
    const std::size_t n = in.nodes.size();
    const double raw = percent * static_cast<double>(n) / 100.0;
    const auto m = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(raw - 1e-9)), 1, n);

    auto top_in = ranking(in);
    auto top_out = ranking(out);
    top_in.resize(m);
    top_out.resize(m);
    std::sort(top_in.begin(), top_in.end());
    std::sort(top_out.begin(), top_out.end());
    std::vector<std::size_t> common;
    std::set_intersection(top_in.begin(), top_in.end(), top_out.begin(), top_out.end(), std::back_inserter(common));
    return 100.0 * static_cast<double>(common.size()) / static_cast<double>(m);
}

RatioCdf degree_ratio_cdf(const DegreeVector &out, const DegreeVector &in) {
    require_same_nodes(out, in);
    std::vector<double> ratios;
    std::size_t within = 0;
    for (std::size_t i = 0; i < in.values.size(); ++i) {
        const double din = in.values[i];
        if (!(din > 0))
            continue;
        const double dout = out.values[i];
        ratios.push_back(dout / din);
        // 0.8 <= out/in <= 1.25 without dividing.
        within += (4.0 * din <= 5.0 * dout) && (4.0 * dout <= 5.0 * din);
    }
    if (ratios.empty())
        throw ValidationError("no node has positive in-degree");
    std::sort(ratios.begin(), ratios.end());
    RatioCdf r;
    r.nodes = ratios.size();
    const auto n = static_cast<double>(ratios.size());
    for (std::size_t i = 0; i < ratios.size(); ++i)
        if (i + 1 == ratios.size() || ratios[i + 1] != ratios[i])
            r.cdf.push_back({ratios[i], static_cast<double>(i + 1) / n});
    r.within_20pct = static_cast<double>(within) / n;
    return r;
}

Clustering clustering(const SimpleGraph &s) {
    const std::size_t n = s.size();
    Clustering c;
    c.per_node.assign(n, 0.0);
    std::vector<char> mark(n, 0);
    double closed = 0; // sum of per-node triangle counts = 3 * triangles
    double triples = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto nb = s.neighbors(i);
        const std::size_t k = nb.size();
        if (k < 2)
            continue;
        for (const auto j : nb)
            mark[j] = 1;
        std::size_t links = 0;
        for (const auto j : nb)
            for (const auto l : s.neighbors(j))
                links += (l > j) && mark[l];
        for (const auto j : nb)
            mark[j] = 0;
        const double pairs = static_cast<double>(k) * static_cast<double>(k - 1) / 2.0;
        c.per_node[i] = static_cast<double>(links) / pairs;
        closed += static_cast<double>(links);
        triples += pairs;
    }
    c.global = triples > 0 ? closed / triples : 0.0;
    c.mean_local = n > 0 ? std::accumulate(c.per_node.begin(), c.per_node.end(), 0.0) / static_cast<double>(n) : 0.0;
    return c;
}

std::vector<DegreeClusteringPoint> mean_local_clustering_vs_degree(const SimpleGraph &s) {
    const auto c = clustering(s);
    std::map<std::size_t, std::pair<double, std::size_t>> groups;
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto &g = groups[s.degree(i)];
        g.first += c.per_node[i];
        ++g.second;
    }
    std::vector<DegreeClusteringPoint> out;
    for (const auto &[deg, acc] : groups)
        out.push_back({deg, acc.first / static_cast<double>(acc.second), acc.second});
    return out;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw ValidationError("pearson needs equally sized samples");
    const std::size_t n = x.size();
    if (n < 2)
        return std::nullopt;
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0)
        return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

LikesAnswersCorrelation likes_answers_correlation(const Corpus &c, std::size_t split) {
    std::vector<double> qa_below, likes_below, qa_above, likes_above;
    for (const auto &[id, p] : c.profiles()) {
        const auto answers = static_cast<double>(p.questions.size());
        const auto likes = static_cast<double>(p.total_likes());
        if (p.questions.size() < split) {
            qa_below.push_back(answers);
            likes_below.push_back(likes);
        } else {
            qa_above.push_back(answers);
            likes_above.push_back(likes);
        }
    }
    return {pearson(qa_below, likes_below), pearson(qa_above, likes_above), qa_below.size(), qa_above.size()};
}

} // namespace qanet
