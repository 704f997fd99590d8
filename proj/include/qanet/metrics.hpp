#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "qanet/corpus.hpp"
#include "qanet/graph.hpp"

namespace qanet {

enum class Direction { in, out };

/// Per-node degree, aligned with the graph's node order.
struct DegreeVector {
    Direction direction = Direction::in;
    bool weighted = true;
    std::vector<UserId> nodes;
    std::vector<double> values;

    double sum() const;
};

DegreeVector degree_vector(const DiGraph &g, Direction direction, bool weighted = true);

struct CurvePoint {
    double x;
    double y;
};
using Curve = std::vector<CurvePoint>;

/// (k, fraction of values >= k) for each distinct k, ascending. Throws on empty input.
Curve ccdf(std::span<const double> values);

/// Fraction of arcs whose reverse arc also exists. Throws on an arcless graph.
double reciprocity(const DiGraph &g);

/// Per node: fraction of its out-arcs that are reciprocated; empty for out-degree 0.
std::vector<std::optional<double>> node_reciprocity(const DiGraph &g);

struct ReciprocityBin {
    double lo; ///< inclusive
    double hi; ///< exclusive
    double mean;
    std::size_t count;
};

/// Mean node reciprocity grouped by weighted out-degree in bins [1,2), [2,4), [4,8), ...
/// Nodes with no out-arcs are left out; empty bins are omitted.
std::vector<ReciprocityBin> mean_reciprocity_by_outdegree(const DiGraph &g);

/// Percentage of nodes shared by the top ceil(x% * N) in-degree and out-degree sets.
/// Ranks break ties by UserId ascending.
double top_overlap(const DegreeVector &in, const DegreeVector &out, double percent);

struct RatioCdf {
    /// (ratio, fraction of nodes with out/in <= ratio) per distinct ratio.
    Curve cdf;
    /// Fraction of nodes with 0.8 <= out/in <= 1.25.
    double within_20pct = 0;
    std::size_t nodes = 0;
};

/// Over nodes with positive in-degree. Throws when there are none.
RatioCdf degree_ratio_cdf(const DegreeVector &out, const DegreeVector &in);

struct Clustering {
    /// 3 * triangles / connected triples (0 when there are no triples).
    double global = 0;
    double mean_local = 0;
    std::vector<double> per_node;
};

Clustering clustering(const SimpleGraph &s);

struct DegreeClusteringPoint {
    std::size_t degree;
    double mean_local;
    std::size_t count;
};

std::vector<DegreeClusteringPoint> mean_local_clustering_vs_degree(const SimpleGraph &s);

/// Pearson correlation; empty for fewer than 2 samples or zero variance.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

struct LikesAnswersCorrelation {
    std::optional<double> below;
    std::optional<double> above;
    std::size_t n_below = 0;
    std::size_t n_above = 0;
};

/// Correlation of (answered questions, total likes) for profiles with fewer than
/// `split` answers and for those with at least `split`.
LikesAnswersCorrelation likes_answers_correlation(const Corpus &c, std::size_t split = 50);

} // namespace qanet
