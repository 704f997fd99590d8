#include "qanet/segmentation.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "qanet/error.hpp"
#include "qanet/format.hpp"
#include "qanet/metrics.hpp"

namespace qanet {

UserContentStats user_content_stats(const Profile &p, const Lexicon &neg, const Lexicon &pos) {
    UserContentStats s;
    s.n_answers = static_cast<std::int64_t>(p.questions.size());
    for (const auto &q : p.questions) {
        const auto t = tag_question(q, neg, pos);
        s.n_neg_questions += t.is_negative;
        s.n_pos_questions += t.is_positive;
        s.n_neg_words += static_cast<std::int64_t>(t.neg_words.size());
        s.n_pos_words += static_cast<std::int64_t>(t.pos_words.size());
    }
    return s;
}

std::string_view to_string(GroupLabel g) {
    switch (g) {
    case GroupLabel::HN:
        return "HN";
    case GroupLabel::HP:
        return "HP";
    case GroupLabel::PN:
        return "PN";
    case GroupLabel::OTHR:
        break;
    }
    return "OTHR";
}

GroupLabel parse_group_label(std::string_view s) {
    for (const auto g : kAllGroups)
        if (to_string(g) == s)
            return g;
    throw ValidationError("unknown group label '" + std::string(s) + "'");
}

GroupLabel classify_user(const UserContentStats &s) {
    if (s.n_neg_questions >= 3 && s.n_pos_questions == 0)
        return GroupLabel::HN;
    if (s.n_neg_questions >= 3 && s.n_pos_questions > 4)
        return GroupLabel::PN;
    if (s.n_pos_questions > 10)
        return GroupLabel::HP;
    return GroupLabel::OTHR;
}

LabelMap classify_corpus(const Corpus &c, const Lexicon &neg, const Lexicon &pos) {
    LabelMap labels;
    for (const auto &[id, p] : c.profiles())
        labels.emplace(id, classify_user(user_content_stats(p, neg, pos)));
    return labels;
}

namespace {

class Mean {
public:
    void add(double v) {
        sum_ += v;
        ++n_;
    }
    std::optional<double> get() const {
        if (n_ == 0)
            return std::nullopt;
        return sum_ / static_cast<double>(n_);
    }

private:
    double sum_ = 0;
    std::size_t n_ = 0;
};

} // namespace

GroupRow aggregate_users(std::string name, const std::vector<UserId> &members, const Corpus &c,
                         const Lexicon &neg, const Lexicon &pos, const MetricInputs &inputs) {
    const DiGraph &gneg = inputs.split.negative;
    const DiGraph &gnon = inputs.split.nonnegative;
    const auto neg_in = degree_vector(gneg, Direction::in);
    const auto neg_out = degree_vector(gneg, Direction::out);
    const auto non_in = degree_vector(gnon, Direction::in);
    const auto non_out = degree_vector(gnon, Direction::out);
    const auto neg_recip = node_reciprocity(gneg);
    const auto non_recip = node_reciprocity(gnon);
    const auto clus = clustering(inputs.simple);

    auto simple_index = [&](const UserId &id) -> std::optional<std::size_t> {
        const auto &nodes = inputs.simple.nodes();
        const auto it = std::lower_bound(nodes.begin(), nodes.end(), id);
        if (it == nodes.end() || *it != id)
            return std::nullopt;
        return static_cast<std::size_t>(it - nodes.begin());
    };

    Mean m_neg_r, m_non_r, m_neg_in, m_non_in, m_neg_out, m_non_out, m_likes, m_clus;
    Mean m_answers, m_neg_q, m_pos_q, m_neg_w, m_pos_w;
    double total_likes = 0, total_answers = 0;
    for (const auto &id : members) {
        const Profile *p = c.find(id);
        if (p == nullptr)
            throw ValidationError("user '" + id.str() + "' is not in the corpus");
        const auto s = user_content_stats(*p, neg, pos);
        m_answers.add(static_cast<double>(s.n_answers));
        m_neg_q.add(static_cast<double>(s.n_neg_questions));
        m_pos_q.add(static_cast<double>(s.n_pos_questions));
        m_neg_w.add(static_cast<double>(s.n_neg_words));
        m_pos_w.add(static_cast<double>(s.n_pos_words));
        const auto likes = static_cast<double>(p->total_likes());
        m_likes.add(likes);
        total_likes += likes;
        total_answers += static_cast<double>(s.n_answers);

        const auto i = gneg.index_of(id);
        const auto j = gnon.index_of(id);
        m_neg_in.add(i ? neg_in.values[*i] : 0.0);
        m_neg_out.add(i ? neg_out.values[*i] : 0.0);
        m_non_in.add(j ? non_in.values[*j] : 0.0);
        m_non_out.add(j ? non_out.values[*j] : 0.0);
        if (i && neg_recip[*i])
            m_neg_r.add(*neg_recip[*i]);
        if (j && non_recip[*j])
            m_non_r.add(*non_recip[*j]);
        const auto k = simple_index(id);
        m_clus.add(k ? clus.per_node[*k] : 0.0);
    }

    GroupRow row;
    row.name = std::move(name);
    row.count = members.size();
    row.neg_reciprocity = m_neg_r.get();
    row.nonneg_reciprocity = m_non_r.get();
    row.neg_in_degree = m_neg_in.get();
    row.nonneg_in_degree = m_non_in.get();
    row.neg_out_degree = m_neg_out.get();
    row.nonneg_out_degree = m_non_out.get();
    row.mean_total_likes = m_likes.get();
    if (total_answers > 0)
        row.likes_per_answer = total_likes / total_answers;
    row.mean_local_clustering = m_clus.get();
    row.mean_answers = m_answers.get();
    row.mean_neg_questions = m_neg_q.get();
    row.mean_pos_questions = m_pos_q.get();
    row.mean_neg_words = m_neg_w.get();
    row.mean_pos_words = m_pos_w.get();
    return row;
}

GroupReport group_report(const Corpus &c, const LabelMap &labels, const Lexicon &neg, const Lexicon &pos,
                         const MetricInputs &inputs) {
    std::map<GroupLabel, std::vector<UserId>> members;
    for (const auto &[id, p] : c.profiles()) {
        const auto it = labels.find(id);
        if (it == labels.end())
            throw ValidationError("user '" + id.str() + "' has no group label");
        members[it->second].push_back(id);
    }
    if (labels.size() != c.size())
        throw ValidationError("labels reference users outside the corpus");
    GroupReport report;
    for (const auto g : kAllGroups)
        report.rows.push_back(aggregate_users(std::string(to_string(g)), members[g], c, neg, pos, inputs));
    return report;
}

LabelFile parse_label_file(std::istream &in) {
    LabelFile lf;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos)
            continue;
        const auto last = line.find_last_not_of(" \t");
        std::string text = line.substr(first, last - first + 1);
        if (!header) {
            constexpr std::string_view prefix = "label:";
            if (text.rfind(prefix, 0) != 0)
                throw ParseError(line_no, "label file must start with 'label: <name>'");
            lf.label = text.substr(prefix.size());
            lf.label.erase(0, lf.label.find_first_not_of(" \t"));
            if (lf.label.empty())
                throw ParseError(line_no, "empty label name");
            header = true;
            continue;
        }
        lf.ids.emplace_back(std::move(text));
    }
    if (!header)
        throw ParseError(line_no, "label file has no 'label:' header");
    return lf;
}

LabelFile load_label_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open label file '" + path.string() + "'");
    return parse_label_file(in);
}

void write_label_file(std::ostream &out, const LabelFile &lf) {
    out << "label: " << lf.label << '\n';
    for (const auto &id : lf.ids)
        out << id.str() << '\n';
}

LabeledReport labeled_report(const Corpus &c, const LabelFile &lf, const Lexicon &neg, const Lexicon &pos,
                             const MetricInputs &inputs) {
    std::vector<UserId> resolved;
    LabeledReport report;
    std::map<UserId, bool> seen;
    for (const auto &id : lf.ids) {
        if (!seen.emplace(id, true).second)
            continue;
        (c.contains(id) ? resolved : report.unresolved).push_back(id);
    }
    if (resolved.empty())
        throw ValidationError("no id of label set '" + lf.label + "' is in the corpus");
    report.row = aggregate_users(lf.label, resolved, c, neg, pos, inputs);
    return report;
}

void write_group_report_csv(std::ostream &out, const std::vector<GroupRow> &rows,
                            const std::vector<std::size_t> &unresolved_counts) {
    for (std::size_t k = 0; k < kGroupReportColumns.size(); ++k)
        out << (k ? "," : "") << kGroupReportColumns[k];
    out << '\n';
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto &row = rows[r];
        out << csv_field(row.name) << ',' << row.count;
        for (const auto &v : {row.neg_reciprocity, row.nonneg_reciprocity, row.neg_in_degree, row.nonneg_in_degree,
                              row.neg_out_degree, row.nonneg_out_degree, row.mean_total_likes, row.likes_per_answer,
                              row.mean_local_clustering, row.mean_answers, row.mean_neg_questions,
                              row.mean_pos_questions, row.mean_neg_words, row.mean_pos_words})
            out << ',' << format_optional(v);
        out << ',' << (r < unresolved_counts.size() ? unresolved_counts[r] : 0) << '\n';
    }
}

} // namespace qanet
