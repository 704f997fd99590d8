#include "qanet/pipeline.hpp"

#include <cmath>
#include <optional>
#include <ostream>

#include "qanet/corpus.hpp"
#include "qanet/format.hpp"
#include "qanet/interaction.hpp"
#include "qanet/report.hpp"
#include "qanet/segmentation.hpp"
#include "qanet/wordgraph.hpp"

namespace qanet {

void validate(const PipelineConfig &cfg) {
    if (!(cfg.tol > 0) || !std::isfinite(cfg.tol))
        throw ValidationError("tol must be a positive number");
    if (cfg.max_iter < 1)
        throw ValidationError("max_iter must be at least 1");
    if (!(cfg.threshold >= 0.0 && cfg.threshold < 1.0))
        throw ValidationError("threshold must be in [0, 1)");
    if (cfg.cap < 1)
        throw ValidationError("cap must be at least 1");
    if (cfg.top_k < 1)
        throw ValidationError("top_k must be at least 1");
    if (cfg.out_dir.empty())
        throw ValidationError("an output directory is required");
}

namespace {

template <typename F>
auto stage(const char *name, F &&body) -> decltype(body()) {
    try {
        return body();
    } catch (const PipelineError &) {
        throw;
    } catch (const std::exception &e) {
        throw PipelineError(name, e.what());
    }
}

WordSet select_words(OutputDir &out, const PipelineConfig &cfg, const Corpus &corpus, const Lexicon &lexicon,
                     const std::string &prefix) {
    const auto bipartite = build_bipartite(corpus, lexicon);
    const auto graph = project_words(bipartite, cfg.threads);
    const auto scores = eigenvector_centrality(graph, cfg.tol, cfg.max_iter);
    out.write(prefix + "_wordgraph_edges.csv", [&](std::ostream &os) { write_wordgraph_edges(os, graph); });
    out.write(prefix + "_wordgraph_nodes.csv", [&](std::ostream &os) { write_centrality_nodes(os, scores); });
    auto selected = select_top_words(scores, lexicon.polarity(), cfg.threshold, cfg.cap);
    out.write(prefix + "_words.txt", [&](std::ostream &os) { write_wordset(os, selected); });
    return selected;
}

} // namespace

PipelineResult run_pipeline(const PipelineConfig &cfg) {
    stage("config", [&] { validate(cfg); });
    std::optional<OutputDir> out;
    try {
        const Corpus corpus = stage("load_corpus", [&] { return load_corpus(cfg.corpus); });
        const Lexicon neg_lex = stage("load_lexicon", [&] { return load_lexicon(cfg.neg_lexicon, Polarity::negative); });
        const Lexicon pos_lex = stage("load_lexicon", [&] { return load_lexicon(cfg.pos_lexicon, Polarity::positive); });
        const auto labels = stage("load_labels", [&] {
            std::vector<LabelFile> files;
            for (const auto &p : cfg.label_files)
                files.push_back(load_label_file(p));
            return files;
        });
        stage("output", [&] { out.emplace(cfg.out_dir); });

        const Corpus sampled = corpus.fully_sampled_subset();
        if (sampled.empty())
            throw PipelineError("load_corpus", "corpus has no fully sampled profiles");

        const auto neg_words = stage("select_negative_words",
                                     [&] { return select_words(*out, cfg, sampled, neg_lex, "neg"); });
        const auto pos_words = stage("select_positive_words",
                                     [&] { return select_words(*out, cfg, sampled, pos_lex, "pos"); });
        const Lexicon neg_sel = neg_words.lexicon();
        const Lexicon pos_sel = pos_words.lexicon();

        stage("corpus_stats", [&] {
            const auto s = corpus_stats(sampled, neg_sel, pos_sel);
            out->write("corpus_stats.json", [&](std::ostream &os) { write_corpus_stats_json(os, s); });
        });

        const auto graph = stage("interaction_graph", [&] {
            auto g = build_interaction_graph(corpus, neg_sel, cfg.top_k);
            out->write("interaction_edges.csv", [&](std::ostream &os) { write_edge_list(os, g); });
            return g;
        });

        stage("metrics", [&] { write_metrics(*out, compute_metrics(graph, sampled)); });

        stage("segmentation", [&] {
            const auto split = split_graph(graph);
            const auto simple = to_simple(graph);
            const MetricInputs inputs{split, simple};
            const auto groups = classify_corpus(sampled, neg_sel, pos_sel);
            out->write("user_groups.csv", [&](std::ostream &os) {
                os << "user,group,n_answers,n_neg_questions,n_pos_questions,n_neg_words,n_pos_words\n";
                for (const auto &[id, label] : groups) {
                    const auto s = user_content_stats(*sampled.find(id), neg_sel, pos_sel);
                    os << csv_field(id.str()) << ',' << to_string(label) << ',' << s.n_answers << ','
                       << s.n_neg_questions << ',' << s.n_pos_questions << ',' << s.n_neg_words << ','
                       << s.n_pos_words << '\n';
                }
            });
            auto report = group_report(sampled, groups, neg_sel, pos_sel, inputs);
            std::vector<std::size_t> unresolved(report.rows.size(), 0);
            for (const auto &lf : labels) {
                auto lr = labeled_report(sampled, lf, neg_sel, pos_sel, inputs);
                report.rows.push_back(std::move(lr.row));
                unresolved.push_back(lr.unresolved.size());
            }
            out->write("group_report.csv",
                       [&](std::ostream &os) { write_group_report_csv(os, report.rows, unresolved); });
        });
    } catch (...) {
        if (out)
            out->mark_partial();
        throw;
    }
    return {out->written()};
}

} // namespace qanet
