#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qanet/corpus.hpp"
#include "qanet/interaction.hpp"
#include "qanet/metrics.hpp"
#include "qanet/wordgraph.hpp"

namespace qanet {

/// Output directory whose files are written atomically (temp file + rename).
class OutputDir {
public:
    explicit OutputDir(std::filesystem::path dir);

    const std::filesystem::path &path() const noexcept { return dir_; }

    /// Writes `name` through `fill`; the file appears only once complete.
    void write(const std::string &name, const std::function<void(std::ostream &)> &fill);

    /// Renames every file written so far to `<name>.partial`.
    void mark_partial();

    const std::vector<std::filesystem::path> &written() const noexcept { return written_; }

private:
    std::filesystem::path dir_;
    std::vector<std::filesystem::path> written_;
};

/// `word_a,word_b,weight`, one row per undirected edge.
void write_wordgraph_edges(std::ostream &out, const SymmetricGraph &w);
/// `word,centrality` in graph order.
void write_centrality_nodes(std::ostream &out, const CentralityScores &s);
void write_corpus_stats_json(std::ostream &out, const CorpusStats &s);
void write_neighborhood_csv(std::ostream &out, const Neighborhood &n);
void write_frequency_csv(std::ostream &out, const FrequencyVector &f);

/// Every interaction-graph statistic, ready to serialize.
struct MetricsReport {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t neg_edges = 0;
    std::size_t nonneg_edges = 0;
    std::optional<double> mean_reciprocity;
    std::optional<double> neg_reciprocity;
    std::optional<double> nonneg_reciprocity;
    Curve ccdf_neg_in, ccdf_neg_out, ccdf_nonneg_in, ccdf_nonneg_out;
    /// x, overlap for total / negative / non-negative weighted degrees.
    std::vector<std::array<double, 4>> overlap;
    Curve ratio_cdf;
    std::optional<double> within_20pct;
    std::vector<ReciprocityBin> recip_neg, recip_nonneg;
    double clustering_global = 0;
    double clustering_mean_local = 0;
    std::vector<DegreeClusteringPoint> clustering_vs_degree;
    LikesAnswersCorrelation likes_answers;
};

/// CCDFs are taken over nodes with positive degree; overlap and degree ratios use
/// weighted degrees of the total graph (n_neg + n_nonneg) and of each split graph.
MetricsReport compute_metrics(const InteractionGraph &u, const Corpus &fully_sampled);

/// metrics.json plus ccdf_*.csv, overlap.csv, ratio_cdf.csv, recip_vs_outdeg.csv,
/// clustering_vs_degree.csv.
void write_metrics(OutputDir &out, const MetricsReport &m);

} // namespace qanet
