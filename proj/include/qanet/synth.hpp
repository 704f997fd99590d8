#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "qanet/corpus.hpp"
#include "qanet/segmentation.hpp"

namespace qanet {

struct GroupMix {
    double hn = 0;
    double hp = 0;
    double pn = 0;
    double othr = 1;
};

struct GenParams {
    std::size_t n_users = 100;
    GroupMix mix;
    /// Answered questions per user, uniform in [questions_min, questions_max].
    std::size_t questions_min = 15;
    std::size_t questions_max = 15;
    /// Mean likes per question (Poisson).
    double like_rate = 2.0;
    std::vector<std::string> neg_vocab;
    std::vector<std::string> pos_vocab;
    std::uint64_t seed = 0;
};

/// Built-in word lists used when a caller leaves the vocabularies empty.
const std::vector<std::string> &default_neg_vocab();
const std::vector<std::string> &default_pos_vocab();
/// Filler words mixed into every question; disjoint from both default vocabularies
/// and from the bundled lexicons.
const std::vector<std::string> &filler_vocab();

/// Throws ValidationError for inconsistent or infeasible parameters.
void validate(const GenParams &p);

/// Flat `key = value` text: n_users, mix_hn, mix_hp, mix_pn, mix_othr, questions_min,
/// questions_max, like_rate, seed, neg_vocab, pos_vocab (comma separated). '#' starts a comment.
GenParams parse_gen_params(std::istream &in);

struct GeneratedCorpus {
    Corpus corpus;
    LabelMap planted;
};

/**
 * Seeded synthetic corpus with planted groups.
 *
 * Group sizes follow `mix` by largest-remainder quota (exact counts, not
 * sampling). Each user's question texts are composed so that tagging them with
 * the vocabularies and classifying reproduces the planted label. Likers are
 * drawn uniformly among the other users. Output depends only on `p`; see
 * SplitMix64 for the random stream.
 */
GeneratedCorpus generate_corpus(const GenParams &p);

struct SampledCorpus {
    Corpus corpus;
    std::vector<UserId> crawl_order;
    /// Observed but never crawled, sorted.
    std::vector<UserId> frontier;
};

/**
 * Breadth-first crawl over the "likers of my answered questions" relation.
 *
 * Crawling a node copies its full profile (all liker ids) from the ground
 * truth and marks it fully sampled. Each BFS level is visited in UserId
 * order. Stops after `budget` crawls or when nothing is left to visit.
 * Discovered but uncrawled ids are added as empty, not fully sampled stubs.
 * An id referenced by likers but absent from the ground truth crawls as an
 * empty profile. Seeds must exist and have at least one like.
 */
SampledCorpus snowball_sample(const Corpus &ground_truth, std::vector<UserId> seeds, std::size_t budget);

/// Ids of the profiles `user` liked, as visible in `c` (sorted, unique).
std::vector<UserId> liked_targets(const Corpus &c, const UserId &user);

/// Ids that liked some question of `user`'s profile (sorted, unique).
std::vector<UserId> likers_of(const Corpus &c, const UserId &user);

} // namespace qanet
