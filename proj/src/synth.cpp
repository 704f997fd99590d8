#include "qanet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <set>

#include "qanet/error.hpp"
#include "qanet/format.hpp"
#include "qanet/rng.hpp"
#include "qanet/text.hpp"

namespace qanet {

const std::vector<std::string> &default_neg_vocab() {
    static const std::vector<std::string> words{
        "ugly",  "fat",   "hate",  "stupid", "f**k",  "bitch",   "ass",      "kill",  "die",   "suck",
        "bad",   "slut",  "hoe",   "s**t",   "d**k",  "dumb",    "loser",    "cut",   "sad",   "depress",
        "creep", "freak", "fake",  "suicide", "worthless", "annoying", "disgusting", "weird", "lonely", "pathetic"};
    return words;
}

const std::vector<std::string> &default_pos_vocab() {
    static const std::vector<std::string> words{
        "beautiful", "pretty",  "love",     "nice",    "cute",    "amazing", "awesome",  "sweet",
        "gorgeous",  "perfect", "lovely",   "kind",    "funny",   "smart",   "best",     "happy",
        "great",     "wonderful", "adorable", "talented", "proud", "brave",  "stunning", "precious"};
    return words;
}

const std::vector<std::string> &filler_vocab() {
    static const std::vector<std::string> words{
        "you",   "are",   "so",     "why",    "do",      "what",   "your",  "is",    "the",     "a",
        "my",    "how",   "when",   "did",    "think",   "about",  "have",  "ever",  "been",    "to",
        "school", "today", "tomorrow", "who", "would",   "color",  "song",  "movie", "food",    "if",
        "could", "go",    "and",    "really", "just",    "me",     "tell",  "something", "at", "night",
        "weekend", "summer", "with", "friends", "people", "say",   "this",  "that",  "or",      "she",
        "he",    "they",  "we",     "our",    "class",   "teacher", "phone", "music", "dog",    "cat",
        "home",  "party", "game",   "team",   "lol",     "omg",    "tbh",   "rate",  "honestly", "always"};
    return words;
}

void validate(const GenParams &p) {
    if (p.n_users < 1)
        throw ValidationError("n_users must be at least 1");
    const double parts[] = {p.mix.hn, p.mix.hp, p.mix.pn, p.mix.othr};
    for (const double f : parts)
        if (!(f >= 0.0))
            throw ValidationError("group mix fractions must be nonnegative");
    if (std::abs(p.mix.hn + p.mix.hp + p.mix.pn + p.mix.othr - 1.0) > 1e-12)
        throw ValidationError("group mix must sum to 1");
    if (p.questions_min > p.questions_max)
        throw ValidationError("questions_min exceeds questions_max");
    if (!(p.like_rate >= 0.0) || p.like_rate > 500.0)
        throw ValidationError("like_rate must be in [0, 500]");
    if (p.mix.hn > 0 && p.questions_max < 3)
        throw ValidationError("HN users need at least 3 questions (questions_max < 3)");
    if (p.mix.pn > 0 && p.questions_max < 5)
        throw ValidationError("PN users need at least 5 questions (questions_max < 5)");
    if (p.mix.hp > 0 && p.questions_max < 11)
        throw ValidationError("HP users need at least 11 questions (questions_max < 11)");

    const auto &neg = p.neg_vocab.empty() ? default_neg_vocab() : p.neg_vocab;
    const auto &pos = p.pos_vocab.empty() ? default_pos_vocab() : p.pos_vocab;
    std::set<std::string> seen;
    for (const auto &w : neg) {
        if (tokenize(w) != std::vector<std::string>{w})
            throw ValidationError("vocabulary word '" + w + "' is not a single lowercase token");
        seen.insert(w);
    }
    for (const auto &w : pos) {
        if (tokenize(w) != std::vector<std::string>{w})
            throw ValidationError("vocabulary word '" + w + "' is not a single lowercase token");
        if (seen.count(w))
            throw ValidationError("word '" + w + "' is in both vocabularies");
        seen.insert(w);
    }
    for (const auto &w : filler_vocab())
        if (seen.count(w))
            throw ValidationError("vocabulary word '" + w + "' collides with the filler words");
}

namespace {

std::string trim(const std::string &s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string &s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto comma = s.find(',', start);
        const auto item = trim(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (!item.empty())
            out.push_back(item);
        if (comma == std::string::npos)
            break;
        start = comma + 1;
    }
    return out;
}

} // namespace

GenParams parse_gen_params(std::istream &in) {
    GenParams p;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty() || line.front() == '[')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(line_no, "expected key = value");
        auto key = trim(line.substr(0, eq));
        std::replace(key.begin(), key.end(), '-', '_');
        const auto value = trim(line.substr(eq + 1));
        auto number = [&]() {
            const auto v = parse_double(value);
            if (!v)
                throw ParseError(line_no, "bad number for '" + key + "'");
            return *v;
        };
        auto count = [&]() {
            const double v = number();
            if (v < 0 || v != std::floor(v))
                throw ParseError(line_no, "'" + key + "' must be a nonnegative integer");
            return static_cast<std::size_t>(v);
        };
        if (key == "n_users")
            p.n_users = count();
        else if (key == "mix_hn")
            p.mix.hn = number();
        else if (key == "mix_hp")
            p.mix.hp = number();
        else if (key == "mix_pn")
            p.mix.pn = number();
        else if (key == "mix_othr")
            p.mix.othr = number();
        else if (key == "questions_min")
            p.questions_min = count();
        else if (key == "questions_max")
            p.questions_max = count();
        else if (key == "like_rate")
            p.like_rate = number();
        else if (key == "seed")
            p.seed = std::stoull(value);
        else if (key == "neg_vocab")
            p.neg_vocab = split_list(value);
        else if (key == "pos_vocab")
            p.pos_vocab = split_list(value);
        else
            throw ParseError(line_no, "unknown key '" + key + "'");
    }
    return p;
}

namespace {

enum class Kind { neutral, negative, positive, both };

/// Draws ranks with probability proportional to 1 / (rank + 1).
class ZipfPicker {
public:
    explicit ZipfPicker(std::size_t n) : cumulative_(n) {
        double acc = 0;
        for (std::size_t r = 0; r < n; ++r) {
            acc += 1.0 / static_cast<double>(r + 1);
            cumulative_[r] = acc;
        }
    }

    std::size_t pick(SplitMix64 &rng) const {
        const double u = rng.uniform() * cumulative_.back();
        const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
    }

private:
    std::vector<double> cumulative_;
};

template <typename T>
void shuffle(std::vector<T> &v, SplitMix64 &rng) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.below(i)]);
}

std::vector<std::size_t> quotas(const GroupMix &mix, std::size_t n) {
    const double fractions[] = {mix.hn, mix.hp, mix.pn, mix.othr};
    std::vector<std::size_t> counts(4);
    std::vector<double> remainder(4);
    std::size_t assigned = 0;
    for (std::size_t g = 0; g < 4; ++g) {
        const double raw = fractions[g] * static_cast<double>(n);
        counts[g] = static_cast<std::size_t>(std::floor(raw + 1e-9));
        remainder[g] = raw - static_cast<double>(counts[g]);
        assigned += counts[g];
    }
    while (assigned < n) {
        std::size_t best = 0;
        for (std::size_t g = 1; g < 4; ++g)
            if (remainder[g] > remainder[best])
                best = g;
        ++counts[best];
        remainder[best] = -1.0;
        ++assigned;
    }
    return counts;
}

std::size_t min_questions(GroupLabel g) {
    switch (g) {
    case GroupLabel::HN:
        return 3;
    case GroupLabel::PN:
        return 5;
    case GroupLabel::HP:
        return 11;
    case GroupLabel::OTHR:
        break;
    }
    return 0;
}

struct Plan {
    std::size_t n_neg;
    std::size_t n_pos;
};

Plan plan_counts(GroupLabel g, std::size_t q, SplitMix64 &rng) {
    switch (g) {
    case GroupLabel::HN:
        return {rng.between(3, q), 0};
    case GroupLabel::PN:
        return {rng.between(3, q), rng.between(5, q)};
    case GroupLabel::HP:
        return {rng.between(0, std::min<std::size_t>(2, q)), rng.between(11, q)};
    case GroupLabel::OTHR:
        break;
    }
    // Either a light negative load, or a heavy one with too little support for PN.
    if (q >= 3 && rng.below(4) == 0)
        return {rng.between(3, q), rng.between(1, std::min<std::size_t>(4, q))};
    return {rng.between(0, std::min<std::size_t>(2, q)), rng.between(0, std::min<std::size_t>(10, q))};
}

} // namespace

GeneratedCorpus generate_corpus(const GenParams &p) {
    validate(p);
    const auto &neg = p.neg_vocab.empty() ? default_neg_vocab() : p.neg_vocab;
    const auto &pos = p.pos_vocab.empty() ? default_pos_vocab() : p.pos_vocab;
    const auto &filler = filler_vocab();
    const ZipfPicker neg_pick(neg.size()), pos_pick(pos.size());
    SplitMix64 rng(p.seed);

    const std::size_t n = p.n_users;
    const std::size_t width = std::max<std::size_t>(4, std::to_string(n).size());
    std::vector<UserId> ids;
    ids.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        auto digits = std::to_string(i);
        ids.emplace_back("u" + std::string(width - digits.size(), '0') + digits);
    }

    std::vector<GroupLabel> labels;
    const auto counts = quotas(p.mix, n);
    for (std::size_t g = 0; g < 4; ++g)
        labels.insert(labels.end(), counts[g], kAllGroups[g]);
    shuffle(labels, rng);

    GeneratedCorpus out;
    for (std::size_t u = 0; u < n; ++u) {
        const GroupLabel label = labels[u];
        const std::size_t q = rng.between(std::max(p.questions_min, min_questions(label)), p.questions_max);
        const Plan plan = plan_counts(label, q, rng);
        const std::size_t both = plan.n_neg + plan.n_pos > q ? plan.n_neg + plan.n_pos - q : 0;
        std::vector<Kind> kinds;
        kinds.insert(kinds.end(), both, Kind::both);
        kinds.insert(kinds.end(), plan.n_neg - both, Kind::negative);
        kinds.insert(kinds.end(), plan.n_pos - both, Kind::positive);
        kinds.insert(kinds.end(), q - kinds.size(), Kind::neutral);
        shuffle(kinds, rng);

        Profile profile{ids[u], {}, true};
        for (const Kind kind : kinds) {
            std::vector<std::string> words;
            const std::size_t n_filler = rng.between(2, 5);
            for (std::size_t k = 0; k < n_filler; ++k)
                words.push_back(filler[rng.below(filler.size())]);
            auto insert = [&](const std::string &w) {
                words.insert(words.begin() + static_cast<std::ptrdiff_t>(rng.below(words.size() + 1)), w);
            };
            if (kind == Kind::negative || kind == Kind::both) {
                const std::size_t k = kind == Kind::both ? 1 : rng.between(1, 2);
                for (std::size_t j = 0; j < k; ++j)
                    insert(neg[neg_pick.pick(rng)]);
            }
            if (kind == Kind::positive || kind == Kind::both) {
                const std::size_t k = kind == Kind::both ? 1 : rng.between(1, 2);
                for (std::size_t j = 0; j < k; ++j)
                    insert(pos[pos_pick.pick(rng)]);
            }
            Question question;
            for (std::size_t k = 0; k < words.size(); ++k)
                question.text += (k ? " " : "") + words[k];
            question.text += '?';
            question.answer = filler[rng.below(filler.size())];

            // Floyd's sampling of distinct likers among the other n - 1 users.
            const std::size_t others = n - 1;
            const auto k = static_cast<std::size_t>(std::min<std::uint64_t>(rng.poisson(p.like_rate), others));
            std::set<std::size_t> chosen;
            for (std::size_t j = others - k; j < others; ++j) {
                const auto t = static_cast<std::size_t>(rng.below(j + 1));
                chosen.insert(chosen.count(t) ? j : t);
            }
            for (const auto c : chosen)
                question.likers.push_back(ids[c >= u ? c + 1 : c]);
            question.like_count = static_cast<std::int64_t>(question.likers.size());
            profile.questions.push_back(std::move(question));
        }
        out.corpus.add(std::move(profile));
        out.planted.emplace(ids[u], label);
    }
    return out;
}

SampledCorpus snowball_sample(const Corpus &ground_truth, std::vector<UserId> seeds, std::size_t budget) {
    if (seeds.empty())
        throw ValidationError("snowball sampling needs at least one seed");
    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
    for (const auto &s : seeds) {
        const Profile *p = ground_truth.find(s);
        if (p == nullptr)
            throw ValidationError("seed '" + s.str() + "' is not in the ground truth");
        if (p->total_likes() == 0)
            throw ValidationError("seed '" + s.str() + "' has no liked questions");
    }

    SampledCorpus out;
    std::set<UserId> discovered(seeds.begin(), seeds.end());
    std::vector<UserId> level = seeds;
    while (!level.empty() && out.crawl_order.size() < budget) {
        std::vector<UserId> next;
        for (const auto &id : level) {
            if (out.crawl_order.size() == budget)
                break;
            const Profile *truth = ground_truth.find(id);
            Profile crawled = truth ? *truth : Profile{id, {}, true};
            crawled.fully_sampled = true;
            for (const auto &q : crawled.questions)
                for (const auto &liker : q.likers)
                    if (discovered.insert(liker).second)
                        next.push_back(liker);
            out.corpus.add(std::move(crawled));
            out.crawl_order.push_back(id);
        }
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }
    for (const auto &id : discovered)
        if (!out.corpus.contains(id)) {
            out.frontier.push_back(id);
            out.corpus.add(Profile{id, {}, false});
        }
    return out;
}

std::vector<UserId> liked_targets(const Corpus &c, const UserId &user) {
    std::vector<UserId> out;
    for (const auto &[id, p] : c.profiles())
        for (const auto &q : p.questions)
            if (std::find(q.likers.begin(), q.likers.end(), user) != q.likers.end()) {
                out.push_back(id);
                break;
            }
    return out;
}

std::vector<UserId> likers_of(const Corpus &c, const UserId &user) {
    std::vector<UserId> out;
    if (const Profile *p = c.find(user))
        for (const auto &q : p->questions)
            out.insert(out.end(), q.likers.begin(), q.likers.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace qanet
