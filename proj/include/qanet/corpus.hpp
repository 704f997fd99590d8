#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qanet {

/// Opaque, non-empty user identifier.
class UserId {
public:
    explicit UserId(std::string value);

    const std::string &str() const noexcept { return value_; }

    friend bool operator==(const UserId &, const UserId &) = default;
    friend std::strong_ordering operator<=>(const UserId &a, const UserId &b) {
        return a.value_.compare(b.value_) <=> 0;
    }

private:
    std::string value_;
};

/// An answered question. Only `text` is analysed; `answer` is carried through.
struct Question {
    std::string text;
    std::string answer;
    std::vector<UserId> likers;
    std::int64_t like_count = 0;
    /// False when the record carried no liker list (only a count was observed).
    bool likers_known = true;
};

struct Profile {
    UserId owner;
    std::vector<Question> questions;
    bool fully_sampled = true;

    /// Stable sort of questions by like_count, descending.
    void normalize();

    std::int64_t total_likes() const;
};

/// Set of profiles keyed by owner. Liker ids may point outside the map.
class Corpus {
public:
    using Map = std::map<UserId, Profile>;

    Corpus() = default;

    /// Validates and normalizes the profile; throws ValidationError on a duplicate owner.
    void add(Profile profile);

    const Map &profiles() const noexcept { return profiles_; }
    std::size_t size() const noexcept { return profiles_.size(); }
    bool empty() const noexcept { return profiles_.empty(); }
    const Profile *find(const UserId &id) const;
    bool contains(const UserId &id) const { return find(id) != nullptr; }

    /// Copy holding only the fully sampled profiles.
    Corpus fully_sampled_subset() const;

private:
    Map profiles_;
};

/// Checks the per-question invariants (liker uniqueness, count consistency).
void validate_question(const Question &q);

/// Reads the line-delimited JSON corpus format. Errors carry the 1-based line.
Corpus parse_corpus(std::istream &in);
Corpus load_corpus(const std::filesystem::path &path);

/// Writes one JSON record per profile in owner order. Round-trips with `parse_corpus`.
void write_corpus(std::ostream &out, const Corpus &corpus);
void save_corpus(const std::filesystem::path &path, const Corpus &corpus);

enum class Polarity { negative, positive };

std::string_view to_string(Polarity p);
Polarity parse_polarity(std::string_view s);

/// Polarity-tagged set of lowercase single-word entries.
class Lexicon {
public:
    /// Lowercases and deduplicates; rejects empty sets and entries with whitespace.
    Lexicon(Polarity polarity, const std::vector<std::string> &words);

    Polarity polarity() const noexcept { return polarity_; }
    const std::set<std::string, std::less<>> &words() const noexcept { return words_; }
    std::size_t size() const noexcept { return words_.size(); }
    bool contains(std::string_view token) const { return words_.find(token) != words_.end(); }

private:
    Polarity polarity_;
    std::set<std::string, std::less<>> words_;
};

Lexicon parse_lexicon(std::istream &in, Polarity polarity);
Lexicon load_lexicon(const std::filesystem::path &path, Polarity polarity);

struct TaggedQuestion {
    bool is_negative = false;
    bool is_positive = false;
    /// Matching tokens in text order; repeats are kept.
    std::vector<std::string> neg_words;
    std::vector<std::string> pos_words;
};

TaggedQuestion tag_text(std::string_view text, const Lexicon &neg, const Lexicon &pos);
/// True when any token of `text` is in `lex`.
bool mentions_any(std::string_view text, const Lexicon &lex);

inline TaggedQuestion tag_question(const Question &q, const Lexicon &neg, const Lexicon &pos) {
    return tag_text(q.text, neg, pos);
}

struct CorpusStats {
    std::size_t users = 0;
    double avg_answers_per_user = 0;
    double avg_neg_questions = 0;
    double avg_pos_questions = 0;
    double avg_neg_words = 0;
    double avg_pos_words = 0;
    double pct_users_with_neg_q = 0;
    double pct_users_with_3plus_neg_q = 0;
    double pct_users_with_pos_q = 0;
};

/// Per-user averages over every profile in the corpus. Throws on an empty corpus.
CorpusStats corpus_stats(const Corpus &c, const Lexicon &neg, const Lexicon &pos);

} // namespace qanet

template <>
struct std::hash<qanet::UserId> {
    std::size_t operator()(const qanet::UserId &id) const noexcept {
        return std::hash<std::string>{}(id.str());
    }
};
