// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "../oracles.hpp"
#include "../support.hpp"
#include "qanet/interaction.hpp"
#include "qanet/metrics.hpp"
#include "qanet/pipeline.hpp"
#include "qanet/report.hpp"
#include "qanet/segmentation.hpp"
#include "qanet/synth.hpp"
#include "qanet/wordgraph.hpp"

using namespace qanet;
using namespace qanet::testing;
namespace fs = std::filesystem;

namespace {

/// Collects the first few failure messages of a criterion.
class Check {
public:
    void expect(bool ok, const std::string &what) {
        if (ok)
            return;
        ++failures_;
        if (notes_.size() < 5)
            notes_.push_back(what);
    }
    bool ok() const { return failures_ == 0; }
    std::string summary() const {
        std::string s;
        for (const auto &n : notes_)
            s += "\n      " + n;
        if (failures_ > notes_.size())
            s += "\n      ... " + std::to_string(failures_ - notes_.size()) + " more";
        return s;
    }

private:
    std::size_t failures_ = 0;
    std::vector<std::string> notes_;
};

std::string str(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// 1. project_words equals a triple-loop B Bᵀ on random binary matrices.
void projection_oracle(Check &check) {
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<std::size_t> rows(1, 50), cols(1, 80);
    std::uniform_real_distribution<double> density(0.02, 0.5);
    for (int round = 0; round < 100; ++round) {
        const auto r = rows(rng), c = cols(rng);
        std::bernoulli_distribution coin(density(rng));
        std::vector<std::vector<int>> b(r, std::vector<int>(c));
        std::vector<std::vector<std::size_t>> incidence(r);
        std::vector<std::string> words;
        for (std::size_t w = 0; w < r; ++w) {
            words.push_back("w" + std::to_string(w));
            for (std::size_t u = 0; u < c; ++u)
                if ((b[w][u] = coin(rng) ? 1 : 0))
                    incidence[w].push_back(u);
        }
        const auto g = project_words(BipartiteGraph(words, numbered(c, "u"), incidence), 1 + round % 4);
        const auto want = oracle::project(b);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                check.expect(g.weight(i, j) == want[i][j], "round " + std::to_string(round) + " W[" +
                                                               std::to_string(i) + "][" + std::to_string(j) + "]");
    }
}

// 2. Centrality against a dense power iteration, P3 closed form, weight scaling.
void centrality_oracle(Check &check) {
    const auto p3 = eigenvector_centrality(SymmetricGraph({"a", "b", "c"}, {{0, 1, 1}, {1, 2, 1}}));
    const double expect_p3[] = {0.70711, 1.0, 0.70711};
    for (int i = 0; i < 3; ++i)
        check.expect(std::abs(p3.scores[i] - expect_p3[i]) <= 1e-5, "P3 score " + str(p3.scores[i]));

    std::mt19937_64 rng(2002);
    std::uniform_int_distribution<std::size_t> size(2, 100);
    std::uniform_real_distribution<double> density(0.0, 0.15);
    for (int round = 0; round < 50; ++round) {
        auto w = random_connected_weighted(rng, size(rng), density(rng), 6);
        const auto got = eigenvector_centrality(to_symmetric(w));
        const auto want = oracle::dense_centrality(w);
        double diff = 0;
        for (std::size_t i = 0; i < w.size(); ++i)
            diff = std::max(diff, std::abs(got.scores[i] - want[i]));
        check.expect(diff <= 1e-6, "round " + std::to_string(round) + " max-norm diff " + str(diff));

        for (auto &row : w)
            for (auto &v : row)
                v *= 7;
        const auto scaled = eigenvector_centrality(to_symmetric(w));
        double sdiff = 0;
        for (std::size_t i = 0; i < w.size(); ++i)
            sdiff = std::max(sdiff, std::abs(got.scores[i] - scaled.scores[i]));
        check.expect(sdiff <= 1e-9, "round " + std::to_string(round) + " scale diff " + str(sdiff));
    }
}

// 3. Reciprocity against an ordered-pair brute force.
void reciprocity_oracle(Check &check) {
    auto fixed = [](std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> arcs) {
        std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
        for (const auto &[i, j] : arcs)
            a[i][j] = 1;
        return reciprocity(to_digraph(a));
    };
    check.expect(fixed(2, {{0, 1}, {1, 0}}) == 1.0, "2-cycle");
    check.expect(fixed(2, {{0, 1}}) == 0.0, "single edge");
    check.expect(fixed(3, {{0, 1}, {1, 0}, {0, 2}}) == 2.0 / 3.0, "a->b, b->a, a->c");

    std::mt19937_64 rng(3003);
    std::uniform_int_distribution<std::size_t> size(2, 50);
    std::uniform_real_distribution<double> density(0.01, 0.6);
    for (int round = 0; round < 100; ++round) {
        auto a = random_digraph(rng, size(rng), density(rng));
        a[0][1] = 1;
        const double got = reciprocity(to_digraph(a));
        const double want = oracle::reciprocity(a);
        check.expect(got == want, "round " + std::to_string(round) + ": " + str(got) + " vs " + str(want));
    }
}

// 4. Clustering against triple enumeration.
void clustering_oracle(Check &check) {
    const auto tri = clustering(to_simple_graph({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
    check.expect(tri.global == 1.0 && tri.mean_local == 1.0, "triangle");
    const auto k4e = clustering(to_simple_graph({{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 0, 0}, {1, 1, 0, 0}}));
    check.expect(std::abs(k4e.mean_local - 5.0 / 6.0) <= 1e-12, "K4 minus edge mean_local " + str(k4e.mean_local));

    std::mt19937_64 rng(4004);
    std::uniform_int_distribution<std::size_t> size(1, 100);
    std::uniform_real_distribution<double> density(0.0, 0.4);
    for (int round = 0; round < 50; ++round) {
        const auto a = random_undirected(rng, size(rng), density(rng));
        const auto got = clustering(to_simple_graph(a));
        const auto want = oracle::clustering(a);
        check.expect(std::abs(got.global - want.global) <= 1e-12,
                     "round " + std::to_string(round) + " global " + str(got.global) + " vs " + str(want.global));
        check.expect(std::abs(got.mean_local - want.mean_local) <= 1e-12,
                     "round " + std::to_string(round) + " mean_local " + str(got.mean_local) + " vs " +
                         str(want.mean_local));
    }
}

// 5. Decision table and exhaustive sweep with HN > PN > HP > OTHR precedence.
void segmentation_table(Check &check) {
    struct Case {
        std::int64_t neg, pos;
        GroupLabel label;
    };
    const Case cases[] = {{3, 0, GroupLabel::HN},   {3, 5, GroupLabel::PN},   {0, 11, GroupLabel::HP},
                          {1, 2, GroupLabel::OTHR}, {3, 11, GroupLabel::PN},  {3, 3, GroupLabel::OTHR},
                          {2, 0, GroupLabel::OTHR}, {0, 10, GroupLabel::OTHR}};
    for (const auto &c : cases) {
        UserContentStats s;
        s.n_neg_questions = c.neg;
        s.n_pos_questions = c.pos;
        const auto got = classify_user(s);
        check.expect(got == c.label, "(" + std::to_string(c.neg) + "," + std::to_string(c.pos) + ") -> " +
                                         std::string(to_string(got)));
    }
    std::map<GroupLabel, int> seen;
    for (std::int64_t neg = 0; neg <= 12; ++neg)
        for (std::int64_t pos = 0; pos <= 12; ++pos) {
            const bool hn = neg >= 3 && pos == 0;
            const bool pn = neg >= 3 && pos > 4;
            const bool hp = pos > 10;
            const auto want = hn ? GroupLabel::HN : pn ? GroupLabel::PN : hp ? GroupLabel::HP : GroupLabel::OTHR;
            UserContentStats s;
            s.n_neg_questions = neg;
            s.n_pos_questions = pos;
            const auto got = classify_user(s);
            ++seen[got];
            check.expect(got == want, "sweep (" + std::to_string(neg) + "," + std::to_string(pos) + ")");
        }
    int total = 0;
    for (const auto &[label, n] : seen)
        total += n;
    check.expect(total == 13 * 13 && seen.size() == 4, "sweep is not a total partition over all four labels");
}

// 6. Planted groups come back exactly through classification and the group report.
void planted_recovery(Check &check) {
    GenParams p;
    p.n_users = 1000;
    p.mix = {0.1, 0.2, 0.2, 0.5};
    p.questions_min = 5;
    p.questions_max = 30;
    p.seed = 6006;
    const auto g = generate_corpus(p);
    const Lexicon neg(Polarity::negative, default_neg_vocab());
    const Lexicon pos(Polarity::positive, default_pos_vocab());
    const auto labels = classify_corpus(g.corpus, neg, pos);
    std::size_t errors = 0;
    for (const auto &[id, label] : labels)
        errors += label != g.planted.at(id);
    check.expect(errors == 0, std::to_string(errors) + " label errors");

    const auto graph = build_interaction_graph(g.corpus, neg);
    const auto split = split_graph(graph);
    const auto simple = to_simple(graph);
    const auto report = group_report(g.corpus, labels, neg, pos, {split, simple});
    const std::size_t want[] = {100, 200, 200, 500};
    for (std::size_t k = 0; k < 4; ++k)
        check.expect(report.rows[k].count == want[k],
                     report.rows[k].name + " count " + std::to_string(report.rows[k].count));
}

std::set<UserId> reachable(const Corpus &truth, const std::vector<UserId> &seeds) {
    std::set<UserId> seen(seeds.begin(), seeds.end());
    std::vector<UserId> stack = seeds;
    while (!stack.empty()) {
        const auto id = stack.back();
        stack.pop_back();
        for (const auto &l : likers_of(truth, id))
            if (seen.insert(l).second)
                stack.push_back(l);
    }
    return seen;
}

// 7. Crawled in-edges are exact, visible out-edges are a subset, full budgets leave no frontier.
void snowball_properties(Check &check) {
    std::mt19937_64 rng(7007);
    std::uniform_int_distribution<std::size_t> users(20, 300), n_seeds(1, 3);
    std::uniform_real_distribution<double> rate(0.05, 1.5);
    for (int round = 0; round < 20; ++round) {
        GenParams p;
        p.n_users = users(rng);
        p.mix = {0.1, 0.1, 0.1, 0.7};
        p.questions_min = 1;
        p.questions_max = 15;
        p.like_rate = rate(rng);
        p.seed = rng();
        const auto truth = generate_corpus(p).corpus;
        std::vector<UserId> eligible;
        for (const auto &[id, prof] : truth.profiles())
            if (prof.total_likes() > 0)
                eligible.push_back(id);
        if (eligible.empty()) {
            check.expect(false, "round " + std::to_string(round) + " produced no liked profile");
            continue;
        }
        std::vector<UserId> seeds;
        for (auto k = n_seeds(rng); k > 0; --k)
            seeds.push_back(eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(rng)]);
        const auto reach = reachable(truth, seeds);
        const auto budget = std::uniform_int_distribution<std::size_t>(1, reach.size())(rng);
        const std::string tag = "round " + std::to_string(round) + ": ";

        const auto s = snowball_sample(truth, seeds, budget);
        const std::set<UserId> crawled(s.crawl_order.begin(), s.crawl_order.end());
        check.expect(s.crawl_order.size() == budget, tag + "crawl did not use the budget");
        for (const auto &id : s.crawl_order) {
            check.expect(likers_of(s.corpus, id) == likers_of(truth, id), tag + "in-edges differ for " + id.str());
            const auto seen = liked_targets(s.corpus, id), real = liked_targets(truth, id);
            check.expect(std::includes(real.begin(), real.end(), seen.begin(), seen.end()),
                         tag + "out-edges not a subset for " + id.str());
            for (const auto &l : likers_of(truth, id))
                check.expect(crawled.count(l) || std::binary_search(s.frontier.begin(), s.frontier.end(), l),
                             tag + "liker " + l.str() + " neither crawled nor in frontier");
        }
        for (const auto &f : s.frontier)
            check.expect(!crawled.count(f), tag + "frontier overlaps crawl");

        for (const std::size_t full : {reach.size(), reach.size() + 17}) {
            const auto all = snowball_sample(truth, seeds, full);
            check.expect(all.frontier.empty(), tag + "frontier not empty with budget " + std::to_string(full));
            check.expect(std::set<UserId>(all.crawl_order.begin(), all.crawl_order.end()) == reach,
                         tag + "full crawl differs from the reachable set");
        }
    }
}

bool monotone_from_one(const Curve &c) {
    if (c.empty())
        return true;
    if (c.front().y != 1.0)
        return false;
    for (std::size_t i = 1; i < c.size(); ++i)
        if (c[i].y > c[i - 1].y)
            return false;
    return true;
}

// 8. CCDF shape, full overlap at 100%, split/merge identity, flow conservation.
void metric_shapes(Check &check) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        GenParams p;
        p.n_users = 150;
        p.mix = {0.15, 0.15, 0.1, 0.6};
        p.questions_min = 11;
        p.questions_max = 40;
        p.like_rate = 0.5 + 0.3 * static_cast<double>(seed);
        p.seed = 8000 + seed;
        const auto c = generate_corpus(p).corpus;
        const auto u = build_interaction_graph(c, Lexicon(Polarity::negative, default_neg_vocab()));
        const auto m = compute_metrics(u, c);
        const std::string tag = "seed " + std::to_string(seed) + ": ";
        for (const auto *curve : {&m.ccdf_neg_in, &m.ccdf_neg_out, &m.ccdf_nonneg_in, &m.ccdf_nonneg_out})
            check.expect(monotone_from_one(*curve), tag + "ccdf not monotone from 1");

        const auto split = split_graph(u);
        const auto total = total_graph(u);
        for (const auto *g : {&split.negative, &split.nonnegative, &total}) {
            const auto in = degree_vector(*g, Direction::in), out = degree_vector(*g, Direction::out);
            check.expect(top_overlap(in, out, 100) == 100.0, tag + "top_overlap(100) != 100");
            check.expect(in.sum() == out.sum(), tag + "weighted in/out degree sums differ");
        }
        check.expect(!m.overlap.empty() && m.overlap.back()[0] == 100 && m.overlap.back()[1] == 100 &&
                         m.overlap.back()[2] == 100 && m.overlap.back()[3] == 100,
                     tag + "reported overlap at 100% is not 100");

        const auto merged = merge_split(split, u.top_k());
        bool same = merged.edges().size() == u.edges().size();
        for (std::size_t k = 0; same && k < u.edges().size(); ++k) {
            const auto &a = u.edges()[k], &b = merged.edges()[k];
            same = a.src == b.src && a.dst == b.dst && a.n_neg == b.n_neg && a.n_nonneg == b.n_nonneg;
        }
        check.expect(same, tag + "split then merge changed the edges");
    }
}

std::map<std::string, std::string> read_tree(const fs::path &dir) {
    std::map<std::string, std::string> files;
    for (const auto &entry : fs::directory_iterator(dir)) {
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        files[entry.path().filename().string()] = ss.str();
    }
    return files;
}

// 9. Two pipeline runs on the demo corpus agree byte for byte and match the golden tree.
void end_to_end(Check &check) {
    const fs::path src = QANET_SOURCE_DIR;
    const auto base = fs::temp_directory_path() / "qanet-acceptance";
    fs::remove_all(base);
    std::map<std::string, std::string> runs[2];
    for (int r = 0; r < 2; ++r) {
        PipelineConfig cfg;
        cfg.corpus = src / "data/demo/corpus.jsonl";
        cfg.neg_lexicon = src / "data/lexicons/negative.txt";
        cfg.pos_lexicon = src / "data/lexicons/positive.txt";
        cfg.label_files = {src / "data/demo/planted_hn.txt"};
        cfg.out_dir = base / ("run" + std::to_string(r));
        run_pipeline(cfg);
        runs[r] = read_tree(cfg.out_dir);
    }
    fs::remove_all(base);
    check.expect(runs[0] == runs[1], "two runs differ");
    const auto golden = read_tree(src / "tests/golden/demo");
    check.expect(!golden.empty(), "golden tree is empty");
    check.expect(golden.size() == runs[0].size(), "file count differs from golden tree");
    for (const auto &[name, bytes] : golden) {
        const auto it = runs[0].find(name);
        check.expect(it != runs[0].end() && it->second == bytes, name + " differs from golden copy");
    }
}

struct Criterion {
    int id;
    const char *name;
    double time_limit; // seconds, 0 = none
    std::function<void(Check &)> run;
};

} // namespace

int main() {
    const Criterion criteria[] = {
        {1, "projection oracle (100 random B up to 50x80, exact)", 5.0, projection_oracle},
        {2, "centrality oracle (50 graphs <= 1e-6, P3 +-1e-5, x7 scaling <= 1e-9)", 0, centrality_oracle},
        {3, "reciprocity oracle (100 random digraphs, exact)", 0, reciprocity_oracle},
        {4, "clustering oracle (triangle, K4-e, 50 random graphs +-1e-12)", 0, clustering_oracle},
        {5, "segmentation decision table and 13x13 sweep", 0, segmentation_table},
        {6, "planted-structure recovery (n=1000, 100/200/200/500)", 10.0, planted_recovery},
        {7, "snowball properties (20 random ground truths)", 0, snowball_properties},
        {8, "metric shape properties", 0, metric_shapes},
        {9, "end-to-end determinism and golden files", 0, end_to_end},
    };
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    int failed = 0;
    for (const auto &c : criteria) {
        Check check;
        const auto t0 = clock::now();
        try {
            c.run(check);
        } catch (const std::exception &e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        if (c.time_limit > 0)
            check.expect(secs < c.time_limit, "took " + str(secs) + " s, limit " + str(c.time_limit) + " s");
        std::printf("[%s] criterion %d: %s (%.2f s)%s\n", check.ok() ? "PASS" : "FAIL", c.id, c.name, secs,
                    check.ok() ? "" : check.summary().c_str());
        failed += !check.ok();
    }
    const double total = std::chrono::duration<double>(clock::now() - start).count();
    const bool in_time = total < 60.0;
    std::printf("[%s] whole suite under 60 s (%.2f s)\n", in_time ? "PASS" : "FAIL", total);
    failed += !in_time;
    std::printf("%d of 9 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
