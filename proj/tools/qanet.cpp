// qanet: command-line front end for the question/answer network analysis.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qanet/corpus.hpp"
#include "qanet/error.hpp"
#include "qanet/format.hpp"
#include "qanet/interaction.hpp"
#include "qanet/pipeline.hpp"
#include "qanet/report.hpp"
#include "qanet/rng.hpp"
#include "qanet/segmentation.hpp"
#include "qanet/synth.hpp"
#include "qanet/wordgraph.hpp"

namespace fs = std::filesystem;
using namespace qanet;

namespace {

struct CommonOpts {
    std::string corpus;
    std::string neg_lexicon;
    std::string pos_lexicon;
    std::string neg_words;
    std::string pos_words;
    std::string out;
    double threshold = 0.5;
    std::size_t cap = 80;
    std::size_t top_k = 15;
    double tol = 1e-10;
    int max_iter = 10000;
    unsigned threads = 1;
    std::vector<std::string> labels;
};

// Word set for one polarity: a saved word list if given, otherwise
// selected from the lexicon by centrality over the fully sampled profiles.
WordSet resolve_words(const CommonOpts &o, const Corpus &sampled, Polarity polarity) {
    const auto &words = polarity == Polarity::negative ? o.neg_words : o.pos_words;
    const auto &lexicon = polarity == Polarity::negative ? o.neg_lexicon : o.pos_lexicon;
    if (!words.empty()) {
        auto ws = load_wordset(words);
        if (ws.polarity != polarity)
            throw ValidationError("word list '" + words + "' has polarity " + std::string(to_string(ws.polarity)));
        return ws;
    }
    if (lexicon.empty())
        throw ValidationError("need --" + std::string(polarity == Polarity::negative ? "neg" : "pos") +
                              "-words or --" + std::string(polarity == Polarity::negative ? "neg" : "pos") +
                              "-lexicon");
    const auto graph = project_words(build_bipartite(sampled, load_lexicon(lexicon, polarity)), o.threads);
    return select_top_words(eigenvector_centrality(graph, o.tol, o.max_iter), polarity, o.threshold, o.cap);
}

Corpus load_sampled(const CommonOpts &o) {
    if (o.corpus.empty())
        throw ValidationError("--corpus is required");
    auto sampled = load_corpus(o.corpus).fully_sampled_subset();
    if (sampled.empty())
        throw ValidationError("corpus has no fully sampled profiles");
    return sampled;
}

OutputDir output(const CommonOpts &o) {
    if (o.out.empty())
        throw ValidationError("--out is required");
    return OutputDir(o.out);
}

// Runs `body`, renaming files already written to *.partial if it throws.
template <typename F>
void with_output(const CommonOpts &o, F &&body) {
    auto out = output(o);
    try {
        body(out);
    } catch (...) {
        out.mark_partial();
        throw;
    }
}

void cmd_stats(const CommonOpts &o) {
    const auto sampled = load_sampled(o);
    const auto neg = resolve_words(o, sampled, Polarity::negative).lexicon();
    const auto pos = resolve_words(o, sampled, Polarity::positive).lexicon();
    const auto s = corpus_stats(sampled, neg, pos);
    if (o.out.empty()) {
        write_corpus_stats_json(std::cout, s);
        return;
    }
    with_output(o, [&](OutputDir &out) {
        out.write("corpus_stats.json", [&](std::ostream &os) { write_corpus_stats_json(os, s); });
    });
}

void cmd_words(const CommonOpts &o) {
    if (o.neg_lexicon.empty() && o.pos_lexicon.empty())
        throw ValidationError("need --neg-lexicon and/or --pos-lexicon");
    const auto sampled = load_sampled(o);
    with_output(o, [&](OutputDir &out) {
        for (const auto &[path, polarity, prefix] :
             {std::tuple{o.neg_lexicon, Polarity::negative, "neg"}, std::tuple{o.pos_lexicon, Polarity::positive, "pos"}}) {
            if (path.empty())
                continue;
            const auto graph = project_words(build_bipartite(sampled, load_lexicon(path, polarity)), o.threads);
            const auto scores = eigenvector_centrality(graph, o.tol, o.max_iter);
            const std::string p = prefix;
            out.write(p + "_wordgraph_edges.csv", [&](std::ostream &os) { write_wordgraph_edges(os, graph); });
            out.write(p + "_wordgraph_nodes.csv", [&](std::ostream &os) { write_centrality_nodes(os, scores); });
            const auto ws = select_top_words(scores, polarity, o.threshold, o.cap);
            out.write(p + "_words.txt", [&](std::ostream &os) { write_wordset(os, ws); });
        }
    });
}

InteractionGraph interaction(const CommonOpts &o, const Corpus &sampled) {
    const auto neg = resolve_words(o, sampled, Polarity::negative).lexicon();
    return build_interaction_graph(load_corpus(o.corpus), neg, o.top_k);
}

void cmd_graph(const CommonOpts &o) {
    const auto sampled = load_sampled(o);
    const auto g = interaction(o, sampled);
    with_output(o, [&](OutputDir &out) {
        out.write("interaction_edges.csv", [&](std::ostream &os) { write_edge_list(os, g); });
    });
}

void cmd_metrics(const CommonOpts &o) {
    const auto sampled = load_sampled(o);
    const auto m = compute_metrics(interaction(o, sampled), sampled);
    with_output(o, [&](OutputDir &out) { write_metrics(out, m); });
}

void cmd_segment(const CommonOpts &o) {
    const auto sampled = load_sampled(o);
    const auto neg = resolve_words(o, sampled, Polarity::negative).lexicon();
    const auto pos = resolve_words(o, sampled, Polarity::positive).lexicon();
    const auto g = build_interaction_graph(load_corpus(o.corpus), neg, o.top_k);
    const auto split = split_graph(g);
    const auto simple = to_simple(g);
    const MetricInputs inputs{split, simple};
    const auto labels = classify_corpus(sampled, neg, pos);
    auto report = group_report(sampled, labels, neg, pos, inputs);
    std::vector<std::size_t> unresolved(report.rows.size(), 0);
    for (const auto &path : o.labels) {
        auto lr = labeled_report(sampled, load_label_file(path), neg, pos, inputs);
        report.rows.push_back(std::move(lr.row));
        unresolved.push_back(lr.unresolved.size());
    }
    with_output(o, [&](OutputDir &out) {
        out.write("user_groups.csv", [&](std::ostream &os) {
            os << "user,group\n";
            for (const auto &[id, label] : labels)
                os << csv_field(id.str()) << ',' << to_string(label) << '\n';
        });
        out.write("group_report.csv", [&](std::ostream &os) { write_group_report_csv(os, report.rows, unresolved); });
    });
}

void cmd_cooccur(const CommonOpts &o, const std::string &word, Polarity polarity) {
    const auto sampled = load_sampled(o);
    const auto ws = resolve_words(o, sampled, polarity);
    const auto f = cooccurrence_distribution(sampled, word, ws);
    with_output(o, [&](OutputDir &out) {
        out.write("cooccur_" + word + ".csv", [&](std::ostream &os) { write_frequency_csv(os, f); });
    });
}

void cmd_neighborhood(const CommonOpts &o, const std::string &word, Polarity polarity) {
    const auto &lexicon = polarity == Polarity::negative ? o.neg_lexicon : o.pos_lexicon;
    if (lexicon.empty())
        throw ValidationError(std::string("--") + (polarity == Polarity::negative ? "neg" : "pos") +
                              "-lexicon is required");
    const auto sampled = load_sampled(o);
    const auto graph = project_words(build_bipartite(sampled, load_lexicon(lexicon, polarity)), o.threads);
    const auto n = word_neighborhood(graph, word, eigenvector_centrality(graph, o.tol, o.max_iter));
    with_output(o, [&](OutputDir &out) {
        out.write("neighborhood_" + word + ".csv", [&](std::ostream &os) { write_neighborhood_csv(os, n); });
    });
}

struct SynthFlags {
    std::optional<std::size_t> n_users, questions_min, questions_max;
    std::optional<double> mix_hn, mix_hp, mix_pn, mix_othr, like_rate;
    std::string config;
};

void cmd_synth(const CommonOpts &o, const SynthFlags &f, std::uint64_t seed) {
    GenParams p;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in)
            throw Error("cannot open config '" + f.config + "'");
        p = parse_gen_params(in);
    }
    p.seed = seed;
    if (f.n_users)
        p.n_users = *f.n_users;
    if (f.questions_min)
        p.questions_min = *f.questions_min;
    if (f.questions_max)
        p.questions_max = *f.questions_max;
    if (f.like_rate)
        p.like_rate = *f.like_rate;
    if (f.mix_hn)
        p.mix.hn = *f.mix_hn;
    if (f.mix_hp)
        p.mix.hp = *f.mix_hp;
    if (f.mix_pn)
        p.mix.pn = *f.mix_pn;
    if (f.mix_othr)
        p.mix.othr = *f.mix_othr;
    const auto g = generate_corpus(p);
    with_output(o, [&](OutputDir &out) {
        out.write("corpus.jsonl", [&](std::ostream &os) { write_corpus(os, g.corpus); });
        for (const auto group : kAllGroups) {
            LabelFile lf{"planted_" + std::string(to_string(group)), {}};
            for (const auto &[id, label] : g.planted)
                if (label == group)
                    lf.ids.push_back(id);
            out.write("labels_" + std::string(to_string(group)) + ".txt", [&](std::ostream &os) { write_label_file(os, lf); });
        }
    });
}

void cmd_crawl(const CommonOpts &o, std::uint64_t seed, const std::vector<std::string> &seed_ids,
               std::size_t n_seeds, std::size_t budget) {
    if (o.corpus.empty())
        throw ValidationError("--corpus is required");
    const auto truth = load_corpus(o.corpus);
    std::vector<UserId> seeds;
    for (const auto &s : seed_ids)
        seeds.emplace_back(s);
    if (seeds.empty()) {
        std::vector<UserId> eligible;
        for (const auto &[id, p] : truth.profiles())
            if (p.total_likes() > 0)
                eligible.push_back(id);
        if (eligible.empty())
            throw ValidationError("no profile has a liked question to seed from");
        SplitMix64 rng(seed);
        const auto k = std::min(n_seeds, eligible.size());
        for (std::size_t i = 0; i < k; ++i) {
            const auto j = i + rng.below(eligible.size() - i);
            std::swap(eligible[i], eligible[j]);
            seeds.push_back(eligible[i]);
        }
    }
    const auto s = snowball_sample(truth, seeds, budget);
    with_output(o, [&](OutputDir &out) {
        out.write("corpus.jsonl", [&](std::ostream &os) { write_corpus(os, s.corpus); });
        out.write("crawl_order.txt", [&](std::ostream &os) {
            for (const auto &id : s.crawl_order)
                os << id.str() << '\n';
        });
        out.write("frontier.txt", [&](std::ostream &os) {
            for (const auto &id : s.frontier)
                os << id.str() << '\n';
        });
    });
}

// Flat key = value pipeline config; relative paths resolve against the config's directory.
PipelineConfig read_pipeline_config(const fs::path &path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open config '" + path.string() + "'");
    const auto base = path.parent_path();
    auto resolve = [&](const std::string &v) { return fs::path(v).is_relative() ? base / v : fs::path(v); };
    PipelineConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto eq = line.find('=');
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos)
                return std::string();
            return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
        };
        if (trim(line).empty())
            continue;
        if (eq == std::string::npos)
            throw ParseError(line_no, "expected key = value");
        auto key = trim(line.substr(0, eq));
        auto number = [&](const std::string &v) {
            const auto d = parse_double(v);
            if (!d)
                throw ParseError(line_no, "'" + key + "' needs a number");
            return *d;
        };
        std::replace(key.begin(), key.end(), '-', '_');
        const auto value = trim(line.substr(eq + 1));
        if (key == "corpus")
            cfg.corpus = resolve(value);
        else if (key == "neg_lexicon")
            cfg.neg_lexicon = resolve(value);
        else if (key == "pos_lexicon")
            cfg.pos_lexicon = resolve(value);
        else if (key == "out")
            cfg.out_dir = resolve(value);
        else if (key == "labels")
            cfg.label_files.push_back(resolve(value));
        else if (key == "tol")
            cfg.tol = number(value);
        else if (key == "max_iter")
            cfg.max_iter = std::stoi(value);
        else if (key == "threshold")
            cfg.threshold = number(value);
        else if (key == "cap")
            cfg.cap = std::stoul(value);
        else if (key == "top_k")
            cfg.top_k = std::stoul(value);
        else if (key == "threads")
            cfg.threads = static_cast<unsigned>(std::stoul(value));
        else
            throw ParseError(line_no, "unknown key '" + key + "'");
    }
    return cfg;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Lexicon-driven analysis of question/answer like networks"};
    app.set_version_flag("--version", std::string("qanet ") + QANET_VERSION);
    app.require_subcommand(1);

    CommonOpts o;
    auto add_corpus = [&](CLI::App *c) { return c->add_option("--corpus", o.corpus, "Corpus file (JSON lines)"); };
    auto add_lexicons = [&](CLI::App *c) {
        c->add_option("--neg-lexicon", o.neg_lexicon, "Negative lexicon file");
        c->add_option("--pos-lexicon", o.pos_lexicon, "Positive lexicon file");
    };
    auto add_words = [&](CLI::App *c) {
        c->add_option("--neg-words", o.neg_words, "Selected negative word list (skips selection)");
        c->add_option("--pos-words", o.pos_words, "Selected positive word list (skips selection)");
    };
    auto add_selection = [&](CLI::App *c) {
        c->add_option("--threshold", o.threshold, "Centrality threshold (exclusive)")->capture_default_str();
        c->add_option("--cap", o.cap, "Maximum selected words")->capture_default_str();
        c->add_option("--tol", o.tol, "Power iteration tolerance")->capture_default_str();
        c->add_option("--max-iter", o.max_iter, "Power iteration limit")->capture_default_str();
        c->add_option("--threads", o.threads, "Worker threads for projection")->capture_default_str();
    };
    auto add_out = [&](CLI::App *c) { return c->add_option("--out", o.out, "Output directory"); };
    auto add_top_k = [&](CLI::App *c) {
        c->add_option("--top-k", o.top_k, "Most-liked questions kept per profile")->capture_default_str();
    };
    auto analysis = [&](const char *name, const char *desc) {
        auto *c = app.add_subcommand(name, desc);
        add_corpus(c)->required();
        add_lexicons(c);
        add_words(c);
        add_selection(c);
        return c;
    };

    auto *stats = analysis("stats", "Corpus content statistics");
    add_out(stats);
    auto *words = app.add_subcommand("words", "Word graphs, centralities and selected word lists");
    add_corpus(words)->required();
    add_lexicons(words);
    add_selection(words);
    add_out(words)->required();
    auto *graph = analysis("graph", "Interaction graph edge list");
    add_top_k(graph);
    add_out(graph)->required();
    auto *metrics = analysis("metrics", "Reciprocity, degree, overlap and clustering statistics");
    add_top_k(metrics);
    add_out(metrics)->required();
    auto *segment = analysis("segment", "User groups and per-group report");
    add_top_k(segment);
    add_out(segment)->required();
    segment->add_option("--labels", o.labels, "Label files with extra user sets")->check(CLI::ExistingFile);

    std::string word, polarity_name = "negative";
    auto *cooccur = analysis("cooccur", "Mean word frequencies among profiles using a word");
    cooccur->add_option("--word", word, "Core word")->required();
    cooccur->add_option("--polarity", polarity_name, "Word set polarity")->capture_default_str();
    add_out(cooccur)->required();
    auto *neighborhood = analysis("neighborhood", "Neighbors of a word in the word graph");
    neighborhood->add_option("--word", word, "Core word")->required();
    neighborhood->add_option("--polarity", polarity_name, "Lexicon polarity")->capture_default_str();
    add_out(neighborhood)->required();

    std::uint64_t seed = 0;
    SynthFlags sf;
    auto *synth = app.add_subcommand("synth", "Generate a synthetic corpus with planted groups");
    synth->add_option("--seed", seed, "Random seed")->required();
    synth->add_option("--config", sf.config, "key = value parameter file")->check(CLI::ExistingFile);
    synth->add_option("--n-users", sf.n_users, "Number of users");
    synth->add_option("--mix-hn", sf.mix_hn, "Fraction of HN users");
    synth->add_option("--mix-hp", sf.mix_hp, "Fraction of HP users");
    synth->add_option("--mix-pn", sf.mix_pn, "Fraction of PN users");
    synth->add_option("--mix-othr", sf.mix_othr, "Fraction of other users");
    synth->add_option("--questions-min", sf.questions_min, "Minimum answered questions per user");
    synth->add_option("--questions-max", sf.questions_max, "Maximum answered questions per user");
    synth->add_option("--like-rate", sf.like_rate, "Mean likes per question");
    add_out(synth)->required();

    std::vector<std::string> seed_ids;
    std::size_t n_seeds = 2, budget = 0;
    auto *crawl = app.add_subcommand("crawl-sim", "Simulate a breadth-first snowball crawl");
    add_corpus(crawl)->required();
    crawl->add_option("--seed", seed, "Random seed")->required();
    crawl->add_option("--seeds", seed_ids, "Seed user ids (default: random profiles with likes)");
    crawl->add_option("--n-seeds", n_seeds, "Number of random seed profiles")->capture_default_str();
    crawl->add_option("--budget", budget, "Maximum profiles crawled")->required();
    add_out(crawl)->required();

    std::string config;
    std::vector<std::string> label_files;
    auto *pipeline = app.add_subcommand("pipeline", "Run every analysis stage");
    pipeline->add_option("--config", config, "key = value pipeline config")->check(CLI::ExistingFile);
    auto *p_corpus = add_corpus(pipeline);
    auto *p_neg = pipeline->add_option("--neg-lexicon", o.neg_lexicon, "Negative lexicon file");
    auto *p_pos = pipeline->add_option("--pos-lexicon", o.pos_lexicon, "Positive lexicon file");
    auto *p_out = add_out(pipeline);
    auto *p_thr = pipeline->add_option("--threshold", o.threshold, "Centrality threshold (exclusive)");
    auto *p_cap = pipeline->add_option("--cap", o.cap, "Maximum selected words");
    auto *p_topk = pipeline->add_option("--top-k", o.top_k, "Most-liked questions kept per profile");
    auto *p_tol = pipeline->add_option("--tol", o.tol, "Power iteration tolerance");
    auto *p_iter = pipeline->add_option("--max-iter", o.max_iter, "Power iteration limit");
    auto *p_thr_n = pipeline->add_option("--threads", o.threads, "Worker threads for projection");
    auto *p_labels = pipeline->add_option("--labels", label_files, "Label files with extra user sets");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto polarity = [&] { return parse_polarity(polarity_name); };
        if (*stats)
            cmd_stats(o);
        else if (*words)
            cmd_words(o);
        else if (*graph)
            cmd_graph(o);
        else if (*metrics)
            cmd_metrics(o);
        else if (*segment)
            cmd_segment(o);
        else if (*cooccur)
            cmd_cooccur(o, word, polarity());
        else if (*neighborhood)
            cmd_neighborhood(o, word, polarity());
        else if (*synth)
            cmd_synth(o, sf, seed);
        else if (*crawl)
            cmd_crawl(o, seed, seed_ids, n_seeds, budget);
        else if (*pipeline) {
            PipelineConfig cfg;
            if (!config.empty())
                cfg = read_pipeline_config(config);
            if (p_corpus->count())
                cfg.corpus = o.corpus;
            if (p_neg->count())
                cfg.neg_lexicon = o.neg_lexicon;
            if (p_pos->count())
                cfg.pos_lexicon = o.pos_lexicon;
            if (p_out->count())
                cfg.out_dir = o.out;
            if (p_thr->count())
                cfg.threshold = o.threshold;
            if (p_cap->count())
                cfg.cap = o.cap;
            if (p_topk->count())
                cfg.top_k = o.top_k;
            if (p_tol->count())
                cfg.tol = o.tol;
            if (p_iter->count())
                cfg.max_iter = o.max_iter;
            if (p_thr_n->count())
                cfg.threads = o.threads;
            if (p_labels->count())
                cfg.label_files.assign(label_files.begin(), label_files.end());
            const auto result = run_pipeline(cfg);
            std::cerr << "qanet: wrote " << result.files.size() << " files to " << cfg.out_dir.string() << '\n';
        }
    } catch (const std::exception &e) {
        std::cerr << "qanet: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
