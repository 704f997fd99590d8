#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "qanet/corpus.hpp"
#include "qanet/error.hpp"
#include "qanet/synth.hpp"
#include "qanet/text.hpp"
#include "support.hpp"

using namespace qanet;
using namespace qanet::testing;

namespace {

using Tokens = std::vector<std::string>;

std::string join(const Tokens &t) {
    std::string s;
    for (const auto &w : t)
        s += (s.empty() ? "" : " ") + w;
    return s;
}

std::filesystem::path lexicon_dir() { return std::filesystem::path(QANET_SOURCE_DIR) / "data" / "lexicons"; }

} // namespace

TEST(Tokenize, Examples) {
    EXPECT_EQ(tokenize("You're so FAT!"), (Tokens{"you're", "so", "fat"}));
    EXPECT_EQ(tokenize(""), Tokens{});
    EXPECT_EQ(tokenize("a-b  c"), (Tokens{"a", "b", "c"}));
}

TEST(Tokenize, StarsAndApostrophesInsideWords) {
    EXPECT_EQ(tokenize("what the f**k?!"), (Tokens{"what", "the", "f**k"}));
    EXPECT_EQ(tokenize("'quoted' *starred* don't"), (Tokens{"quoted", "starred", "don't"}));
    EXPECT_EQ(tokenize("*** '' *'*"), Tokens{});
    EXPECT_EQ(tokenize("it\xE2\x80\x99s"), (Tokens{"it's"}));
}

TEST(Tokenize, UnicodeLettersAndSeparators) {
    EXPECT_EQ(tokenize("Caf\xC3\x89 na\xC3\xAFve"), (Tokens{"caf\xC3\xA9", "na\xC3\xAFve"}));
    EXPECT_EQ(tokenize("hi\xF0\x9F\x98\x80there"), (Tokens{"hi", "there"}));
    EXPECT_EQ(tokenize("\xD0\x9F\xD0\xA0\xD0\x98\xD0\x92\xD0\x95\xD0\xA2"),
              (Tokens{"\xD0\xBF\xD1\x80\xD0\xB8\xD0\xB2\xD0\xB5\xD1\x82"}));
}

TEST(Tokenize, IdempotentOnJoinedOutput) {
    std::mt19937_64 rng(11);
    const std::string alphabet = "aZ9'* -!?.,\t\nxyQ'";
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1), len(0, 40);
    for (int round = 0; round < 500; ++round) {
        std::string s;
        for (auto n = len(rng); n > 0; --n)
            s.push_back(alphabet[pick(rng)]);
        const auto once = tokenize(s);
        EXPECT_EQ(tokenize(join(once)), once) << s;
        for (const auto &t : once) {
            EXPECT_FALSE(t.empty());
            EXPECT_EQ(to_lower(t), t);
        }
    }
}

TEST(Corpus, SortsQuestionsByLikesStably) {
    std::istringstream in(R"({"owner":"u1","fully_sampled":true,"questions":[)"
                          R"({"text":"a","answer":"","like_count":1,"likers":["x"]},)"
                          R"({"text":"b","answer":"","like_count":2,"likers":["x","y"]},)"
                          R"({"text":"c","answer":"","like_count":1,"likers":["y"]}]})");
    const auto c = parse_corpus(in);
    ASSERT_EQ(c.size(), 1u);
    const auto &qs = c.find(uid("u1"))->questions;
    ASSERT_EQ(qs.size(), 3u);
    EXPECT_EQ(qs[0].text, "b");
    EXPECT_EQ(qs[1].text, "a");
    EXPECT_EQ(qs[2].text, "c");
}

TEST(Corpus, EmptyInputIsEmptyCorpus) {
    std::istringstream in("");
    EXPECT_TRUE(parse_corpus(in).empty());
}

TEST(Corpus, LikeCountMismatchReportsLine) {
    std::istringstream in(R"({"owner":"u1","fully_sampled":true,"questions":[]})"
                          "\n"
                          R"({"owner":"u2","fully_sampled":true,"questions":[{"text":"t","answer":"","like_count":3,"likers":["a","b"]}]})");
    try {
        parse_corpus(in);
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(Corpus, RejectsDuplicatesAndMalformedRecords) {
    std::istringstream dup(R"({"owner":"u1","fully_sampled":true,"questions":[]})"
                           "\n"
                           R"({"owner":"u1","fully_sampled":true,"questions":[]})");
    EXPECT_THROW(parse_corpus(dup), ParseError);
    std::istringstream bad("{not json}\n");
    EXPECT_THROW(parse_corpus(bad), ParseError);
    std::istringstream dup_liker(
        R"({"owner":"u1","fully_sampled":true,"questions":[{"text":"t","answer":"","like_count":2,"likers":["a","a"]}]})");
    EXPECT_THROW(parse_corpus(dup_liker), ParseError);
    EXPECT_THROW(UserId(""), ValidationError);
}

TEST(Corpus, MissingLikerListKeepsCountOnly) {
    std::istringstream in(R"({"owner":"u1","fully_sampled":false,"questions":[{"text":"t","answer":"","like_count":4}]})");
    const auto c = parse_corpus(in);
    const auto &q = c.find(uid("u1"))->questions[0];
    EXPECT_FALSE(q.likers_known);
    EXPECT_EQ(q.like_count, 4);
    EXPECT_EQ(c.find(uid("u1"))->total_likes(), 4);
    std::ostringstream out;
    write_corpus(out, c);
    EXPECT_EQ(out.str().find("likers"), std::string::npos);
}

TEST(Corpus, SaveLoadRoundTripsBytes) {
    GenParams p;
    p.n_users = 40;
    p.mix = {0.25, 0.25, 0.25, 0.25};
    p.questions_min = 11;
    p.questions_max = 20;
    p.seed = 5;
    const auto c = generate_corpus(p).corpus;
    std::ostringstream first;
    write_corpus(first, c);
    std::istringstream in(first.str());
    std::ostringstream second;
    write_corpus(second, parse_corpus(in));
    EXPECT_EQ(first.str(), second.str());
}

TEST(Corpus, SelfLikesAllowed) {
    EXPECT_NO_THROW(corpus_of({profile("a", {question("hi", ids({"a"}))})}));
}

TEST(Corpus, FullySampledSubset) {
    const auto c = corpus_of({profile("a", {}), profile("b", {}, false), profile("c", {})});
    const auto s = c.fully_sampled_subset();
    EXPECT_EQ(s.size(), 2u);
    EXPECT_FALSE(s.contains(uid("b")));
}

TEST(Lexicon, LowercasesAndDeduplicates) {
    std::istringstream in("Hate\nhate\nugly\n");
    const auto lex = parse_lexicon(in, Polarity::negative);
    EXPECT_EQ(lex.size(), 2u);
    EXPECT_TRUE(lex.contains("hate"));
    EXPECT_TRUE(lex.contains("ugly"));
}

TEST(Lexicon, OnlyCommentsIsAnError) {
    std::istringstream in("# nothing here\n\n# still nothing\n");
    EXPECT_THROW(parse_lexicon(in, Polarity::negative), Error);
}

TEST(Lexicon, RejectsMultiWordEntries) {
    std::istringstream in("ugly\nvery ugly\n");
    EXPECT_THROW(parse_lexicon(in, Polarity::negative), ParseError);
}

// The shipped lexicons load with one entry per distinct non-comment line.
TEST(Lexicon, BundledFilesLoadEveryEntry) {
    for (const auto &[file, polarity] : {std::pair{"negative.txt", Polarity::negative},
                                         std::pair{"positive.txt", Polarity::positive}}) {
        std::ifstream in(lexicon_dir() / file);
        std::set<std::string> distinct;
        std::string line;
        while (std::getline(in, line))
            if (!line.empty() && line[0] != '#')
                distinct.insert(line);
        const auto lex = load_lexicon(lexicon_dir() / file, polarity);
        EXPECT_EQ(lex.size(), distinct.size()) << file;
        EXPECT_GE(lex.size(), 150u) << file;
    }
}

TEST(Lexicon, BundledFilesAreDisjointFromGeneratorFiller) {
    const auto neg = load_lexicon(lexicon_dir() / "negative.txt", Polarity::negative);
    const auto pos = load_lexicon(lexicon_dir() / "positive.txt", Polarity::positive);
    for (const auto &w : filler_vocab()) {
        EXPECT_FALSE(neg.contains(w)) << w;
        EXPECT_FALSE(pos.contains(w)) << w;
    }
    for (const auto &w : default_neg_vocab())
        EXPECT_TRUE(neg.contains(w)) << w;
    for (const auto &w : default_pos_vocab())
        EXPECT_TRUE(pos.contains(w)) << w;
}

TEST(Tagging, Examples) {
    const auto neg = neg_lex({"ugly", "fat"});
    const auto pos = pos_lex({"nice", "beautiful"});
    auto t = tag_text("you are ugly ugly", neg, pos);
    EXPECT_TRUE(t.is_negative);
    EXPECT_EQ(t.neg_words, (Tokens{"ugly", "ugly"}));
    t = tag_text("nice day", neg, pos);
    EXPECT_FALSE(t.is_negative);
    EXPECT_TRUE(t.is_positive);
    t = tag_text("fat but beautiful", neg, pos);
    EXPECT_TRUE(t.is_negative);
    EXPECT_TRUE(t.is_positive);
}

TEST(Tagging, ScansQuestionTextOnly) {
    auto q = question("hello there");
    q.answer = "ugly";
    EXPECT_FALSE(tag_question(q, neg_lex({"ugly"}), pos_lex({"nice"})).is_negative);
}

TEST(CorpusStats, SingleEmptyProfile) {
    const auto s = corpus_stats(corpus_of({profile("a", {})}), neg_lex({"ugly"}), pos_lex({"nice"}));
    EXPECT_EQ(s.users, 1u);
    EXPECT_EQ(s.avg_answers_per_user, 0);
    EXPECT_EQ(s.avg_neg_questions, 0);
    EXPECT_EQ(s.avg_pos_words, 0);
    EXPECT_EQ(s.pct_users_with_neg_q, 0);
}

TEST(CorpusStats, HandCounted) {
    const auto c = corpus_of({profile("a", {question("ugly ugly"), question("so ugly"), question("nice")}),
                              profile("b", {question("hello")})});
    const auto s = corpus_stats(c, neg_lex({"ugly"}), pos_lex({"nice"}));
    EXPECT_DOUBLE_EQ(s.avg_neg_questions, 1.0);
    EXPECT_DOUBLE_EQ(s.pct_users_with_neg_q, 50.0);
    EXPECT_DOUBLE_EQ(s.avg_neg_words, 1.5);
    EXPECT_DOUBLE_EQ(s.avg_answers_per_user, 2.0);
    EXPECT_DOUBLE_EQ(s.pct_users_with_3plus_neg_q, 0.0);
    EXPECT_DOUBLE_EQ(s.pct_users_with_pos_q, 50.0);
}

TEST(CorpusStats, EmptyCorpusThrows) {
    EXPECT_THROW(corpus_stats(Corpus{}, neg_lex({"a"}), pos_lex({"b"})), ValidationError);
}

TEST(CorpusStats, BoundsHoldOnGeneratedCorpora) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        GenParams p;
        p.n_users = 60;
        p.mix = {0.2, 0.2, 0.2, 0.4};
        p.questions_min = 11;
        p.questions_max = 25;
        p.seed = seed;
        const auto c = generate_corpus(p).corpus;
        const auto s = corpus_stats(c, Lexicon(Polarity::negative, default_neg_vocab()),
                                    Lexicon(Polarity::positive, default_pos_vocab()));
        EXPECT_LE(s.avg_neg_questions, s.avg_answers_per_user);
        EXPECT_LE(s.avg_pos_questions, s.avg_answers_per_user);
        EXPECT_GE(s.avg_neg_words, 0);
        for (const double pct : {s.pct_users_with_neg_q, s.pct_users_with_3plus_neg_q, s.pct_users_with_pos_q}) {
            EXPECT_GE(pct, 0);
            EXPECT_LE(pct, 100);
        }
    }
}
