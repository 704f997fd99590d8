#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <map>
#include <sstream>
#include <tuple>

#include "qanet/corpus.hpp"
#include "qanet/error.hpp"
#include "qanet/metrics.hpp"
#include "qanet/pipeline.hpp"
#include "qanet/segmentation.hpp"
#include "qanet/synth.hpp"
#include "qanet/text.hpp"
#include "qanet/wordgraph.hpp"

namespace py = pybind11;
using namespace qanet;

namespace {

std::vector<UserId> to_ids(const std::vector<std::string> &names) {
    std::vector<UserId> ids;
    ids.reserve(names.size());
    for (const auto &n : names)
        ids.emplace_back(n);
    return ids;
}

std::vector<std::string> to_names(const std::vector<UserId> &ids) {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (const auto &id : ids)
        out.push_back(id.str());
    return out;
}

std::string corpus_text(const Corpus &c) {
    std::ostringstream os;
    write_corpus(os, c);
    return os.str();
}

Corpus corpus_from_text(const std::string &text) {
    std::istringstream in(text);
    return parse_corpus(in);
}

// Dense W = B Bᵀ (zero diagonal) for a 0/1 matrix given as rows of words.
std::vector<std::vector<std::int64_t>> py_project_words(const std::vector<std::vector<int>> &incidence,
                                                        unsigned threads) {
    const std::size_t n_words = incidence.size();
    const std::size_t n_users = n_words ? incidence[0].size() : 0;
    std::vector<std::string> words;
    std::vector<std::vector<std::size_t>> rows(n_words);
    for (std::size_t w = 0; w < n_words; ++w) {
        if (incidence[w].size() != n_users)
            throw ValidationError("incidence rows must have equal length");
        words.push_back("w" + std::to_string(w));
        for (std::size_t u = 0; u < n_users; ++u) {
            if (incidence[w][u] != 0 && incidence[w][u] != 1)
                throw ValidationError("incidence entries must be 0 or 1");
            if (incidence[w][u])
                rows[w].push_back(u);
        }
    }
    std::vector<UserId> users;
    for (std::size_t u = 0; u < n_users; ++u)
        users.emplace_back("u" + std::to_string(u));
    const auto g = project_words(BipartiteGraph(words, users, rows), threads);
    std::vector<std::vector<std::int64_t>> dense(n_words, std::vector<std::int64_t>(n_words, 0));
    for (std::size_t i = 0; i < n_words; ++i) {
        const auto nb = g.neighbors(i);
        const auto wt = g.weights(i);
        for (std::size_t k = 0; k < nb.size(); ++k)
            dense[i][nb[k]] = wt[k];
    }
    return dense;
}

std::map<std::string, double> py_centrality(const std::vector<std::string> &labels,
                                            const std::vector<std::tuple<std::string, std::string, std::int64_t>> &edges,
                                            double tol, int max_iter) {
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (!index.emplace(labels[i], i).second)
            throw ValidationError("duplicate label '" + labels[i] + "'");
    std::vector<WeightedEdge> es;
    for (const auto &[a, b, w] : edges) {
        const auto ia = index.find(a), ib = index.find(b);
        if (ia == index.end() || ib == index.end())
            throw ValidationError("edge references an unknown label");
        es.push_back({ia->second, ib->second, w});
    }
    const auto s = eigenvector_centrality(SymmetricGraph(labels, es), tol, max_iter);
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < s.labels.size(); ++i)
        out[s.labels[i]] = s.scores[i];
    return out;
}

std::vector<std::pair<std::string, double>> py_select(const std::map<std::string, double> &scores,
                                                      const std::string &polarity, double threshold,
                                                      std::size_t cap) {
    CentralityScores s;
    for (const auto &[word, score] : scores) {
        s.labels.push_back(word);
        s.scores.push_back(score);
    }
    const auto ws = select_top_words(s, parse_polarity(polarity), threshold, cap);
    std::vector<std::pair<std::string, double>> out;
    for (const auto &w : ws.words)
        out.emplace_back(w.word, w.score);
    return out;
}

DiGraph digraph(const std::vector<std::string> &nodes, const std::vector<std::pair<std::string, std::string>> &arcs) {
    auto ids = to_ids(nodes);
    std::sort(ids.begin(), ids.end());
    auto find = [&](const std::string &name) {
        const auto it = std::lower_bound(ids.begin(), ids.end(), UserId(name));
        if (it == ids.end() || it->str() != name)
            throw ValidationError("arc references unknown node '" + name + "'");
        return static_cast<std::size_t>(it - ids.begin());
    };
    std::vector<Arc> as;
    for (const auto &[a, b] : arcs)
        as.push_back({find(a), find(b), 1});
    return DiGraph(std::move(ids), std::move(as));
}

py::dict py_clustering(const std::vector<std::string> &nodes,
                       const std::vector<std::pair<std::string, std::string>> &edges) {
    const auto simple = to_simple(digraph(nodes, edges));
    const auto c = clustering(simple);
    py::dict out;
    out["global"] = c.global;
    out["mean_local"] = c.mean_local;
    py::dict local;
    for (std::size_t i = 0; i < simple.size(); ++i)
        local[py::str(simple.nodes()[i].str())] = c.per_node[i];
    out["local"] = local;
    return out;
}

py::tuple py_generate(std::size_t n_users, const std::map<std::string, double> &mix, std::size_t questions_min,
                      std::size_t questions_max, double like_rate, std::uint64_t seed) {
    GenParams p;
    p.n_users = n_users;
    p.mix = GroupMix{0, 0, 0, 0};
    for (const auto &[name, frac] : mix) {
        switch (parse_group_label(name)) {
        case GroupLabel::HN:
            p.mix.hn = frac;
            break;
        case GroupLabel::HP:
            p.mix.hp = frac;
            break;
        case GroupLabel::PN:
            p.mix.pn = frac;
            break;
        case GroupLabel::OTHR:
            p.mix.othr = frac;
            break;
        }
    }
    p.questions_min = questions_min;
    p.questions_max = questions_max;
    p.like_rate = like_rate;
    p.seed = seed;
    const auto g = generate_corpus(p);
    std::map<std::string, std::string> planted;
    for (const auto &[id, label] : g.planted)
        planted[id.str()] = std::string(to_string(label));
    return py::make_tuple(corpus_text(g.corpus), planted);
}

py::dict py_snowball(const std::string &corpus_jsonl, const std::vector<std::string> &seeds, std::size_t budget) {
    const auto s = snowball_sample(corpus_from_text(corpus_jsonl), to_ids(seeds), budget);
    py::dict out;
    out["corpus"] = corpus_text(s.corpus);
    out["crawl_order"] = to_names(s.crawl_order);
    out["frontier"] = to_names(s.frontier);
    return out;
}

py::dict py_summary(const std::filesystem::path &path) {
    const auto c = load_corpus(path);
    std::size_t full = 0, questions = 0;
    for (const auto &[id, p] : c.profiles()) {
        full += p.fully_sampled;
        questions += p.questions.size();
    }
    py::dict out;
    out["profiles"] = c.size();
    out["fully_sampled"] = full;
    out["questions"] = questions;
    return out;
}

std::vector<std::filesystem::path> py_pipeline(std::filesystem::path corpus, std::filesystem::path neg_lexicon,
                                               std::filesystem::path pos_lexicon, std::filesystem::path out,
                                               double threshold, std::size_t cap, std::size_t top_k, double tol,
                                               int max_iter, std::vector<std::filesystem::path> labels) {
    PipelineConfig cfg;
    cfg.corpus = std::move(corpus);
    cfg.neg_lexicon = std::move(neg_lexicon);
    cfg.pos_lexicon = std::move(pos_lexicon);
    cfg.out_dir = std::move(out);
    cfg.threshold = threshold;
    cfg.cap = cap;
    cfg.top_k = top_k;
    cfg.tol = tol;
    cfg.max_iter = max_iter;
    cfg.label_files = std::move(labels);
    py::gil_scoped_release release;
    return run_pipeline(cfg).files;
}

} // namespace

PYBIND11_MODULE(_qanet, m) {
    m.doc() = "Word graphs, like networks and user segmentation for question/answer corpora";
    m.attr("__version__") = QANET_VERSION;

    static py::exception<Error> base(m, "Error");
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
    py::register_exception<PipelineError>(m, "PipelineError", base.ptr());

    m.def("tokenize", &tokenize, py::arg("text"), "Lowercased word tokens of a UTF-8 string.");
    m.def("project_words", &py_project_words, py::arg("incidence"), py::arg("threads") = 1,
          "Word co-occurrence counts B Bᵀ with a zero diagonal, from a 0/1 word x user matrix.");
    m.def("eigenvector_centrality", &py_centrality, py::arg("labels"), py::arg("edges"), py::arg("tol") = 1e-10,
          py::arg("max_iter") = 10000, "Max-normalized eigenvector centrality of a weighted undirected graph.");
    m.def("select_top_words", &py_select, py::arg("scores"), py::arg("polarity") = "negative",
          py::arg("threshold") = 0.5, py::arg("cap") = 80);
    m.def(
        "reciprocity",
        [](const std::vector<std::string> &nodes, const std::vector<std::pair<std::string, std::string>> &arcs) {
            return reciprocity(digraph(nodes, arcs));
        },
        py::arg("nodes"), py::arg("arcs"), "Fraction of arcs whose reverse arc exists.");
    m.def("clustering", &py_clustering, py::arg("nodes"), py::arg("edges"),
          "Global and mean local clustering of the undirected version of a graph.");
    m.def(
        "classify_user",
        [](std::int64_t n_neg, std::int64_t n_pos) {
            UserContentStats s;
            s.n_neg_questions = n_neg;
            s.n_pos_questions = n_pos;
            return std::string(to_string(classify_user(s)));
        },
        py::arg("n_neg_questions"), py::arg("n_pos_questions"));
    m.def("generate_corpus", &py_generate, py::arg("n_users"), py::arg("mix"), py::arg("questions_min") = 15,
          py::arg("questions_max") = 15, py::arg("like_rate") = 2.0, py::arg("seed") = 0,
          "Synthetic corpus as JSON lines, plus the planted label of every user.");
    m.def("snowball_sample", &py_snowball, py::arg("corpus"), py::arg("seeds"), py::arg("budget"));
    m.def("load_corpus_summary", &py_summary, py::arg("path"));
    m.def("run_pipeline", &py_pipeline, py::arg("corpus"), py::arg("neg_lexicon"), py::arg("pos_lexicon"),
          py::arg("out"), py::arg("threshold") = 0.5, py::arg("cap") = 80, py::arg("top_k") = 15,
          py::arg("tol") = 1e-10, py::arg("max_iter") = 10000,
          py::arg("labels") = std::vector<std::filesystem::path>{}, "Run every analysis stage; returns written files.");
}
