#include "qanet/report.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "qanet/error.hpp"
#include "qanet/format.hpp"

namespace qanet {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

OutputDir::OutputDir(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec)
        throw Error("cannot create output directory '" + dir_.string() + "': " + ec.message());
}

void OutputDir::write(const std::string &name, const std::function<void(std::ostream &)> &fill) {
    const fs::path target = dir_ / name;
    const fs::path temp = dir_ / (name + ".tmp");
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot write '" + temp.string() + "'");
        fill(out);
        out.flush();
        if (!out)
            throw Error("write failed for '" + temp.string() + "'");
    }
    fs::rename(temp, target);
    written_.push_back(target);
}

void OutputDir::mark_partial() {
    for (auto &file : written_) {
        std::error_code ec;
        fs::path partial = file;
        partial += ".partial";
        fs::rename(file, partial, ec);
        if (!ec)
            file = partial;
    }
}

void write_wordgraph_edges(std::ostream &out, const SymmetricGraph &w) {
    out << "word_a,word_b,weight\n";
    for (const auto &e : w.edges())
        out << csv_field(w.labels()[e.a]) << ',' << csv_field(w.labels()[e.b]) << ',' << e.weight << '\n';
}

void write_centrality_nodes(std::ostream &out, const CentralityScores &s) {
    out << "word,centrality\n";
    for (std::size_t i = 0; i < s.labels.size(); ++i)
        out << csv_field(s.labels[i]) << ',' << format_double(s.scores[i]) << '\n';
}

void write_corpus_stats_json(std::ostream &out, const CorpusStats &s) {
    ordered_json j;
    j["users"] = s.users;
    j["avg_answers_per_user"] = s.avg_answers_per_user;
    j["avg_neg_questions"] = s.avg_neg_questions;
    j["avg_pos_questions"] = s.avg_pos_questions;
    j["avg_neg_words"] = s.avg_neg_words;
    j["avg_pos_words"] = s.avg_pos_words;
    j["pct_users_with_neg_q"] = s.pct_users_with_neg_q;
    j["pct_users_with_3plus_neg_q"] = s.pct_users_with_3plus_neg_q;
    j["pct_users_with_pos_q"] = s.pct_users_with_pos_q;
    out << j.dump(2) << '\n';
}

void write_neighborhood_csv(std::ostream &out, const Neighborhood &n) {
    out << "core,core_centrality,neighbor,weight,neighbor_centrality\n";
    for (const auto &r : n.neighbors)
        out << csv_field(n.core) << ',' << format_double(n.core_centrality) << ',' << csv_field(r.word) << ','
            << r.weight << ',' << format_double(r.centrality) << '\n';
}

void write_frequency_csv(std::ostream &out, const FrequencyVector &f) {
    out << "word,mean_frequency\n";
    for (const auto &[word, freq] : f.entries)
        out << csv_field(word) << ',' << format_double(freq) << '\n';
}

namespace {

Curve positive_ccdf(const DegreeVector &d) {
    std::vector<double> positive;
    for (const double v : d.values)
        if (v > 0)
            positive.push_back(v);
    return positive.empty() ? Curve{} : ccdf(positive);
}

std::optional<double> maybe_reciprocity(const DiGraph &g) {
    if (g.arc_count() == 0)
        return std::nullopt;
    return reciprocity(g);
}

void write_curve(std::ostream &out, const char *header, const Curve &c) {
    out << header << '\n';
    for (const auto &p : c)
        out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

} // namespace

MetricsReport compute_metrics(const InteractionGraph &u, const Corpus &fully_sampled) {
    MetricsReport m;
    const auto split = split_graph(u);
    const auto total = total_graph(u);
    m.nodes = u.nodes().size();
    m.edges = u.edges().size();
    m.neg_edges = split.negative.arc_count();
    m.nonneg_edges = split.nonnegative.arc_count();
    m.mean_reciprocity = maybe_reciprocity(total);
    m.neg_reciprocity = maybe_reciprocity(split.negative);
    m.nonneg_reciprocity = maybe_reciprocity(split.nonnegative);

    const auto neg_in = degree_vector(split.negative, Direction::in);
    const auto neg_out = degree_vector(split.negative, Direction::out);
    const auto non_in = degree_vector(split.nonnegative, Direction::in);
    const auto non_out = degree_vector(split.nonnegative, Direction::out);
    const auto tot_in = degree_vector(total, Direction::in);
    const auto tot_out = degree_vector(total, Direction::out);
    m.ccdf_neg_in = positive_ccdf(neg_in);
    m.ccdf_neg_out = positive_ccdf(neg_out);
    m.ccdf_nonneg_in = positive_ccdf(non_in);
    m.ccdf_nonneg_out = positive_ccdf(non_out);

    if (m.nodes > 0)
        for (int x = 1; x <= 100; ++x)
            m.overlap.push_back({static_cast<double>(x), top_overlap(tot_in, tot_out, x),
                                 top_overlap(neg_in, neg_out, x), top_overlap(non_in, non_out, x)});

    const bool any_in = std::any_of(tot_in.values.begin(), tot_in.values.end(), [](double v) { return v > 0; });
    if (any_in) {
        const auto r = degree_ratio_cdf(tot_out, tot_in);
        m.ratio_cdf = r.cdf;
        m.within_20pct = r.within_20pct;
    }
    if (m.neg_edges > 0)
        m.recip_neg = mean_reciprocity_by_outdegree(split.negative);
    if (m.nonneg_edges > 0)
        m.recip_nonneg = mean_reciprocity_by_outdegree(split.nonnegative);

    const auto simple = to_simple(u);
    const auto c = clustering(simple);
    m.clustering_global = c.global;
    m.clustering_mean_local = c.mean_local;
    m.clustering_vs_degree = mean_local_clustering_vs_degree(simple);
    m.likes_answers = likes_answers_correlation(fully_sampled);
    return m;
}

void write_metrics(OutputDir &out, const MetricsReport &m) {
    auto opt = [](const std::optional<double> &v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
    ordered_json j;
    j["nodes"] = m.nodes;
    j["edges"] = m.edges;
    j["neg_edges"] = m.neg_edges;
    j["nonneg_edges"] = m.nonneg_edges;
    j["mean_reciprocity"] = opt(m.mean_reciprocity);
    j["neg_reciprocity"] = opt(m.neg_reciprocity);
    j["nonneg_reciprocity"] = opt(m.nonneg_reciprocity);
    j["degree_ratio_within_20pct"] = opt(m.within_20pct);
    j["clustering_global"] = m.clustering_global;
    j["clustering_mean_local"] = m.clustering_mean_local;
    j["likes_answers_corr_below_50"] = opt(m.likes_answers.below);
    j["likes_answers_corr_above_50"] = opt(m.likes_answers.above);
    j["likes_answers_profiles_below_50"] = m.likes_answers.n_below;
    j["likes_answers_profiles_above_50"] = m.likes_answers.n_above;
    out.write("metrics.json", [&](std::ostream &os) { os << j.dump(2) << '\n'; });

    out.write("ccdf_neg_in.csv", [&](std::ostream &os) { write_curve(os, "degree,ccdf", m.ccdf_neg_in); });
    out.write("ccdf_neg_out.csv", [&](std::ostream &os) { write_curve(os, "degree,ccdf", m.ccdf_neg_out); });
    out.write("ccdf_nonneg_in.csv", [&](std::ostream &os) { write_curve(os, "degree,ccdf", m.ccdf_nonneg_in); });
    out.write("ccdf_nonneg_out.csv", [&](std::ostream &os) { write_curve(os, "degree,ccdf", m.ccdf_nonneg_out); });
    out.write("overlap.csv", [&](std::ostream &os) {
        os << "x_percent,overlap_total,overlap_neg,overlap_nonneg\n";
        for (const auto &row : m.overlap)
            os << format_double(row[0]) << ',' << format_double(row[1]) << ',' << format_double(row[2]) << ','
               << format_double(row[3]) << '\n';
    });
    out.write("ratio_cdf.csv", [&](std::ostream &os) { write_curve(os, "ratio,cdf", m.ratio_cdf); });
    out.write("recip_vs_outdeg.csv", [&](std::ostream &os) {
        os << "graph,outdeg_lo,outdeg_hi,mean_reciprocity,nodes\n";
        for (const auto &[name, bins] : {std::pair{"neg", &m.recip_neg}, std::pair{"nonneg", &m.recip_nonneg}})
            for (const auto &b : *bins)
                os << name << ',' << format_double(b.lo) << ',' << format_double(b.hi) << ','
                   << format_double(b.mean) << ',' << b.count << '\n';
    });
    out.write("clustering_vs_degree.csv", [&](std::ostream &os) {
        os << "degree,mean_local_clustering,nodes\n";
        for (const auto &p : m.clustering_vs_degree)
            os << p.degree << ',' << format_double(p.mean_local) << ',' << p.count << '\n';
    });
}

} // namespace qanet
