#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qanet/corpus.hpp"
#include "qanet/graph.hpp"
#include "qanet/interaction.hpp"

namespace qanet {

struct UserContentStats {
    std::int64_t n_answers = 0;
    std::int64_t n_neg_questions = 0;
    std::int64_t n_pos_questions = 0;
    std::int64_t n_neg_words = 0;
    std::int64_t n_pos_words = 0;

    friend bool operator==(const UserContentStats &, const UserContentStats &) = default;
};

/// Counts over every answered question on the profile.
UserContentStats user_content_stats(const Profile &p, const Lexicon &neg, const Lexicon &pos);

enum class GroupLabel { HN, HP, PN, OTHR };

inline constexpr std::array<GroupLabel, 4> kAllGroups{GroupLabel::HN, GroupLabel::HP, GroupLabel::PN,
                                                     GroupLabel::OTHR};

std::string_view to_string(GroupLabel g);
GroupLabel parse_group_label(std::string_view s);

/// HN: >= 3 negative and no positive questions. PN: >= 3 negative and > 4 positive.
/// HP: > 10 positive. Checked in that order; anything else is OTHR.
GroupLabel classify_user(const UserContentStats &s);

using LabelMap = std::map<UserId, GroupLabel>;

LabelMap classify_corpus(const Corpus &c, const Lexicon &neg, const Lexicon &pos);

/// Graphs the per-group metrics are read from; all built over the same corpus.
struct MetricInputs {
    const SplitGraphs &split;
    const SimpleGraph &simple;
};

/// Aggregates for one set of users. Means are empty for an empty set.
struct GroupRow {
    std::string name;
    std::size_t count = 0;
    std::optional<double> neg_reciprocity;
    std::optional<double> nonneg_reciprocity;
    std::optional<double> neg_in_degree;
    std::optional<double> nonneg_in_degree;
    std::optional<double> neg_out_degree;
    std::optional<double> nonneg_out_degree;
    std::optional<double> mean_total_likes;
    std::optional<double> likes_per_answer;
    std::optional<double> mean_local_clustering;
    std::optional<double> mean_answers;
    std::optional<double> mean_neg_questions;
    std::optional<double> mean_pos_questions;
    std::optional<double> mean_neg_words;
    std::optional<double> mean_pos_words;
};

/**
 * Aggregate one set of users.
 *
 * Degrees are weighted sums read from the split graphs. Reciprocity is the
 * node-level out-arc reciprocation fraction, averaged over the members that
 * have at least one out-arc in that graph. likes_per_answer is the members'
 * total likes over their total answers. Members absent from the graphs count
 * as degree 0 and clustering 0.
 */
GroupRow aggregate_users(std::string name, const std::vector<UserId> &members, const Corpus &c,
                         const Lexicon &neg, const Lexicon &pos, const MetricInputs &inputs);

struct GroupReport {
    /// HN, HP, PN, OTHR in that order.
    std::vector<GroupRow> rows;
};

/// `labels` must cover exactly the corpus' profiles.
GroupReport group_report(const Corpus &c, const LabelMap &labels, const Lexicon &neg, const Lexicon &pos,
                         const MetricInputs &inputs);

/// Externally labeled user set, e.g. a hand-labeled "cutting" list.
struct LabelFile {
    std::string label;
    std::vector<UserId> ids;
};

LabelFile parse_label_file(std::istream &in);
LabelFile load_label_file(const std::filesystem::path &path);
void write_label_file(std::ostream &out, const LabelFile &lf);

struct LabeledReport {
    GroupRow row;
    std::vector<UserId> unresolved;
};

/// Aggregates over the label set's ids found in the corpus. Throws when none are found.
LabeledReport labeled_report(const Corpus &c, const LabelFile &lf, const Lexicon &neg, const Lexicon &pos,
                             const MetricInputs &inputs);

/// Column order of the group report CSV.
inline constexpr std::array<std::string_view, 17> kGroupReportColumns{
    "group",           "count",           "neg_reciprocity",  "nonneg_reciprocity",    "neg_in_degree",
    "nonneg_in_degree", "neg_out_degree", "nonneg_out_degree", "mean_total_likes",      "likes_per_answer",
    "mean_local_clustering", "mean_answers", "mean_neg_questions", "mean_pos_questions", "mean_neg_words",
    "mean_pos_words",  "unresolved_ids"};

/// One CSV row per entry; empty means are written as `null`.
void write_group_report_csv(std::ostream &out, const std::vector<GroupRow> &rows,
                            const std::vector<std::size_t> &unresolved_counts = {});

} // namespace qanet
