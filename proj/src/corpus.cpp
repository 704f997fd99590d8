#include "qanet/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "qanet/error.hpp"
#include "qanet/text.hpp"

namespace qanet {

using nlohmann::json;
using nlohmann::ordered_json;

UserId::UserId(std::string value) : value_(std::move(value)) {
    if (value_.empty())
        throw ValidationError("user id must be non-empty");
}

void Profile::normalize() {
    std::stable_sort(questions.begin(), questions.end(),
                     [](const Question &a, const Question &b) { return a.like_count > b.like_count; });
}

std::int64_t Profile::total_likes() const {
    std::int64_t total = 0;
    for (const auto &q : questions)
        total += q.like_count;
    return total;
}

void validate_question(const Question &q) {
    if (q.like_count < 0)
        throw ValidationError("negative like_count");
    if (!q.likers_known) {
        if (!q.likers.empty())
            throw ValidationError("liker list present on a question marked as unknown likers");
        return;
    }
    if (static_cast<std::size_t>(q.like_count) != q.likers.size())
        throw ValidationError("like_count " + std::to_string(q.like_count) + " does not match "
                              + std::to_string(q.likers.size()) + " likers");
    std::vector<UserId> sorted = q.likers;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ValidationError("duplicate liker id");
}

void Corpus::add(Profile profile) {
    for (const auto &q : profile.questions)
        validate_question(q);
    profile.normalize();
    const UserId owner = profile.owner;
    auto [it, inserted] = profiles_.emplace(owner, std::move(profile));
    if (!inserted)
        throw ValidationError("duplicate owner id '" + owner.str() + "'");
}

const Profile *Corpus::find(const UserId &id) const {
    const auto it = profiles_.find(id);
    return it == profiles_.end() ? nullptr : &it->second;
}

Corpus Corpus::fully_sampled_subset() const {
    Corpus out;
    for (const auto &[id, p] : profiles_)
        if (p.fully_sampled)
            out.profiles_.emplace(id, p);
    return out;
}

namespace {

const json &require(const json &obj, const char *key) {
    const auto it = obj.find(key);
    if (it == obj.end())
        throw ValidationError(std::string("missing field '") + key + "'");
    return *it;
}

Question parse_question(const json &j) {
    if (!j.is_object())
        throw ValidationError("question must be an object");
    Question q;
    const auto &text = require(j, "text");
    if (!text.is_string())
        throw ValidationError("question text must be a string");
    q.text = text.get<std::string>();
    if (const auto it = j.find("answer"); it != j.end()) {
        if (!it->is_string())
            throw ValidationError("answer must be a string");
        q.answer = it->get<std::string>();
    }
    const auto &count = require(j, "like_count");
    if (!count.is_number_integer())
        throw ValidationError("like_count must be an integer");
    q.like_count = count.get<std::int64_t>();
    if (const auto it = j.find("likers"); it != j.end()) {
        if (!it->is_array())
            throw ValidationError("likers must be an array");
        q.likers.reserve(it->size());
        for (const auto &l : *it) {
            if (!l.is_string())
                throw ValidationError("liker id must be a string");
            q.likers.emplace_back(l.get<std::string>());
        }
    } else {
        q.likers_known = false;
    }
    validate_question(q);
    return q;
}

Profile parse_profile(const json &j) {
    if (!j.is_object())
        throw ValidationError("record must be an object");
    const auto &owner = require(j, "owner");
    if (!owner.is_string())
        throw ValidationError("owner must be a string");
    Profile p{UserId(owner.get<std::string>()), {}, true};
    if (const auto it = j.find("fully_sampled"); it != j.end()) {
        if (!it->is_boolean())
            throw ValidationError("fully_sampled must be a boolean");
        p.fully_sampled = it->get<bool>();
    }
    const auto &questions = require(j, "questions");
    if (!questions.is_array())
        throw ValidationError("questions must be an array");
    for (const auto &q : questions)
        p.questions.push_back(parse_question(q));
    return p;
}

} // namespace

Corpus parse_corpus(std::istream &in) {
    Corpus corpus;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            corpus.add(parse_profile(json::parse(line)));
        } catch (const json::exception &e) {
            throw ParseError(line_no, e.what());
        } catch (const ValidationError &e) {
            throw ParseError(line_no, e.what());
        }
    }
    return corpus;
}

Corpus load_corpus(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open corpus file '" + path.string() + "'");
    return parse_corpus(in);
}

void write_corpus(std::ostream &out, const Corpus &corpus) {
    for (const auto &[id, p] : corpus.profiles()) {
        ordered_json record;
        record["owner"] = id.str();
        record["fully_sampled"] = p.fully_sampled;
        auto questions = ordered_json::array();
        for (const auto &q : p.questions) {
            ordered_json jq;
            jq["text"] = q.text;
            jq["answer"] = q.answer;
            jq["like_count"] = q.like_count;
            if (q.likers_known) {
                auto likers = ordered_json::array();
                for (const auto &l : q.likers)
                    likers.push_back(l.str());
                jq["likers"] = std::move(likers);
            }
            questions.push_back(std::move(jq));
        }
        record["questions"] = std::move(questions);
        out << record.dump() << '\n';
    }
}

void save_corpus(const std::filesystem::path &path, const Corpus &corpus) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write corpus file '" + path.string() + "'");
    write_corpus(out, corpus);
}

std::string_view to_string(Polarity p) {
    return p == Polarity::negative ? "negative" : "positive";
}

Polarity parse_polarity(std::string_view s) {
    if (s == "negative")
        return Polarity::negative;
    if (s == "positive")
        return Polarity::positive;
    throw ValidationError("unknown polarity '" + std::string(s) + "'");
}

Lexicon::Lexicon(Polarity polarity, const std::vector<std::string> &words) : polarity_(polarity) {
    for (const auto &w : words) {
        if (w.empty())
            throw ValidationError("empty lexicon entry");
        if (w.find_first_of(" \t\r\n\v\f") != std::string::npos)
            throw ValidationError("lexicon entry '" + w + "' contains whitespace");
        words_.insert(to_lower(w));
    }
    if (words_.empty())
        throw ValidationError("empty lexicon");
}

Lexicon parse_lexicon(std::istream &in, Polarity polarity) {
    std::vector<std::string> words;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        const auto last = line.find_last_not_of(" \t\r");
        std::string word = line.substr(first, last - first + 1);
        if (word.find_first_of(" \t") != std::string::npos)
            throw ParseError(line_no, "lexicon entry '" + word + "' contains whitespace");
        words.push_back(std::move(word));
    }
    return Lexicon(polarity, words);
}

Lexicon load_lexicon(const std::filesystem::path &path, Polarity polarity) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open lexicon file '" + path.string() + "'");
    return parse_lexicon(in, polarity);
}

TaggedQuestion tag_text(std::string_view text, const Lexicon &neg, const Lexicon &pos) {
    TaggedQuestion t;
    for (auto &token : tokenize(text)) {
        if (neg.contains(token))
            t.neg_words.push_back(token);
        if (pos.contains(token))
            t.pos_words.push_back(std::move(token));
    }
    t.is_negative = !t.neg_words.empty();
    t.is_positive = !t.pos_words.empty();
    return t;
}

bool mentions_any(std::string_view text, const Lexicon &lex) {
    const auto tokens = tokenize(text);
    return std::any_of(tokens.begin(), tokens.end(), [&](const std::string &t) { return lex.contains(t); });
}

CorpusStats corpus_stats(const Corpus &c, const Lexicon &neg, const Lexicon &pos) {
    if (c.empty())
        throw ValidationError("corpus_stats requires a non-empty corpus");
    std::size_t answers = 0, neg_q = 0, pos_q = 0, neg_w = 0, pos_w = 0;
    std::size_t with_neg = 0, with_3neg = 0, with_pos = 0;
    for (const auto &[id, p] : c.profiles()) {
        std::size_t user_neg = 0, user_pos = 0;
        for (const auto &q : p.questions) {
            const auto t = tag_question(q, neg, pos);
            user_neg += t.is_negative;
            user_pos += t.is_positive;
            neg_w += t.neg_words.size();
            pos_w += t.pos_words.size();
        }
        answers += p.questions.size();
        neg_q += user_neg;
        pos_q += user_pos;
        with_neg += user_neg >= 1;
        with_3neg += user_neg >= 3;
        with_pos += user_pos >= 1;
    }
    const auto n = static_cast<double>(c.size());
    CorpusStats s;
    s.users = c.size();
    s.avg_answers_per_user = static_cast<double>(answers) / n;
    s.avg_neg_questions = static_cast<double>(neg_q) / n;
    s.avg_pos_questions = static_cast<double>(pos_q) / n;
    s.avg_neg_words = static_cast<double>(neg_w) / n;
    s.avg_pos_words = static_cast<double>(pos_w) / n;
    s.pct_users_with_neg_q = 100.0 * static_cast<double>(with_neg) / n;
    s.pct_users_with_3plus_neg_q = 100.0 * static_cast<double>(with_3neg) / n;
    s.pct_users_with_pos_q = 100.0 * static_cast<double>(with_pos) / n;
    return s;
}

} // namespace qanet
