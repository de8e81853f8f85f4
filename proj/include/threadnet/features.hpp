#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <threadnet/dynamics.hpp>
#include <threadnet/stats.hpp>

namespace threadnet {

inline constexpr std::array<double, 3> kRewireFractions = {0.2, 0.5, 0.9};

// Per-thread feature row for the corpus correlation report, plus the
// per-thread shares behind the voter/star distribution outputs.
struct ThreadFeatures {
    std::string thread_id;
    std::optional<double> entropy;
    std::optional<double> aspl;
    std::optional<double> gcc;
    double pct_one_comment = 0;
    double reciprocity = 0;
    std::array<double, 3> rewire_fractions = kRewireFractions;
    std::array<std::optional<double>, 3> reciprocity_rewired;
    double comments = 0;
    double pct_non_voters = 0;
    double avg_comment_words = 0;
    std::optional<double> avg_score;
    double duration_secs = 0;
    std::optional<double> comment_frequency;  // multigraph edges per minute
    std::optional<double> sentiment;          // post sentiment, pass-through
    std::optional<double> pct_unsure_voters;
    double star_join_share = 0;
    double voter_share = 0;
};

namespace detail {

inline std::size_t word_count(const std::string& body) {
    std::size_t words = 0;
    bool in_word = false;
    for (char c : body) {
        bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r';
        if (!space && !in_word) ++words;
        in_word = !space;
    }
    return words;
}

}  // namespace detail

// final_metrics must be the last sample of the thread's metric trace
// (the fully grown graph). Rewired reciprocities recompute reciprocity
// only; labels do not move with edges.
inline ThreadFeatures thread_features(const ThreadRecord& rec, const TemporalMultigraph& g,
                                      const MetricSample& final_metrics,
                                      std::uint64_t rewire_seed,
                                      const std::array<double, 3>& fractions = kRewireFractions) {
    ThreadFeatures f;
    f.thread_id = rec.thread_id;
    f.rewire_fractions = fractions;
    f.entropy = disagreement_entropy(rec.labels).entropy_bits;
    f.aspl = final_metrics.aspl;
    f.gcc = final_metrics.gcc;
    f.comments = static_cast<double>(rec.comments.size());

    std::map<std::string, std::size_t> per_author;
    std::uint64_t words = 0;
    std::uint64_t score_sum = 0;
    std::size_t score_n = 0;
    for (const auto& c : rec.comments) {
        ++per_author[author_of(c)];
        words += detail::word_count(c.body);
        if (c.score) {
            score_sum += static_cast<std::uint64_t>(*c.score);
            ++score_n;
        }
    }
    std::size_t once = 0;
    for (const auto& [author, n] : per_author) once += n == 1;
    f.pct_one_comment =
        100.0 * static_cast<double>(once) / static_cast<double>(per_author.size());
    f.avg_comment_words =
        static_cast<double>(words) / static_cast<double>(rec.comments.size());
    if (score_n > 0)
        f.avg_score = static_cast<double>(score_sum) / static_cast<double>(score_n);

    SimpleDigraph proj = project_simple_directed(g);
    f.reciprocity = reciprocity(proj);
    for (std::size_t i = 0; i < fractions.size(); ++i) {
        RewireResult r = rewire(proj, fractions[i], rewire_seed + i);
        f.reciprocity_rewired[i] = reciprocity(r.graph);
    }

    std::size_t commenters = 0, voters = 0, unsure = 0, non_voters = 0;
    for (const auto& labels : g.vertex_labels) {
        if (labels.empty()) continue;
        ++commenters;
        bool any_vote = false, any_unsure = false;
        for (Judgment j : labels) {
            any_vote |= is_voting(j);
            any_unsure |= j == Judgment::Unsure;
        }
        voters += any_vote;
        unsure += any_unsure;
        non_voters += !any_vote;
    }
    f.pct_non_voters =
        100.0 * static_cast<double>(non_voters) / static_cast<double>(commenters);
    if (voters > 0)
        f.pct_unsure_voters = 100.0 * static_cast<double>(unsure) / static_cast<double>(voters);

    if (!g.edges.empty()) {
        f.duration_secs = static_cast<double>(g.edges.back().t - g.edges.front().t);
        if (f.duration_secs > 0)
            f.comment_frequency = static_cast<double>(g.edges.size()) / (f.duration_secs / 60.0);
    }
    f.sentiment = rec.root.sentiment;
    f.star_join_share = 100.0 * star_join_fraction(g);
    f.voter_share = 100.0 * voter_fraction(g);
    return f;
}

// --- corpus correlation report ---------------------------------------------

struct CorrelationRow {
    std::string feature;
    std::optional<double> rho;
    std::optional<double> p_value;
    std::size_t n = 0;
    bool insufficient = false;
};

struct CorrelationReport {
    std::vector<CorrelationRow> rows;
    std::size_t n_threads = 0;
};

// Spearman correlation of thread entropy against every thread feature.
// Threads missing either value drop out row-wise; a feature with fewer
// than 3 valid threads is marked insufficient. The sentiment row appears
// only when at least one thread carries the optional input column.
inline CorrelationReport correlation_report(std::span<const ThreadFeatures> features) {
    CorrelationReport report;
    report.n_threads = features.size();

    auto add_row = [&](const std::string& name, auto getter, bool emit_always = true) {
        bool any = false;
        std::vector<double> xs, ys;
        for (const auto& f : features) {
            std::optional<double> v = getter(f);
            if (!v) continue;
            any = true;
            if (!f.entropy) continue;
            xs.push_back(*f.entropy);
            ys.push_back(*v);
        }
        if (!any && !emit_always) return;
        CorrelationRow row;
        row.feature = name;
        row.n = xs.size();
        if (xs.size() < 3) {
            row.insufficient = true;
        } else {
            Correlation c = spearman(xs, ys);
            if (c.rho) {
                row.rho = c.rho;
                row.p_value = c.p_value;
            } else {
                row.insufficient = true;  // constant series
            }
        }
        report.rows.push_back(std::move(row));
    };

    auto opt = [](std::optional<double> v) { return v; };
    add_row("ASPL", [&](const ThreadFeatures& f) { return opt(f.aspl); });
    add_row("GCC", [&](const ThreadFeatures& f) { return opt(f.gcc); });
    add_row("only one comment (%)",
            [](const ThreadFeatures& f) { return std::optional<double>(f.pct_one_comment); });
    add_row("reciprocity",
            [](const ThreadFeatures& f) { return std::optional<double>(f.reciprocity); });
    const auto& fractions = features.empty() ? kRewireFractions : features[0].rewire_fractions;
    for (std::size_t i = 0; i < fractions.size(); ++i) {
        add_row("reciprocity (rand " + format_double(fractions[i] * 100) + "%)",
                [i](const ThreadFeatures& f) { return f.reciprocity_rewired[i]; });
    }
    add_row("comments per thread",
            [](const ThreadFeatures& f) { return std::optional<double>(f.comments); });
    add_row("non-voters (%)",
            [](const ThreadFeatures& f) { return std::optional<double>(f.pct_non_voters); });
    add_row("comment length (avg)",
            [](const ThreadFeatures& f) { return std::optional<double>(f.avg_comment_words); });
    add_row("comment score (avg)", [](const ThreadFeatures& f) { return f.avg_score; });
    add_row("thread duration",
            [](const ThreadFeatures& f) { return std::optional<double>(f.duration_secs); });
    add_row("comment frequency", [](const ThreadFeatures& f) { return f.comment_frequency; });
    add_row("post sentiment", [](const ThreadFeatures& f) { return f.sentiment; },
            /*emit_always=*/false);
    add_row("unsure voters (%)", [](const ThreadFeatures& f) { return f.pct_unsure_voters; });
    return report;
}

inline std::string correlation_csv(const CorrelationReport& report) {
    std::string out = "feature,rho,p,n,status\n";
    for (const auto& r : report.rows) {
        csv_row(out, r.feature, r.rho, r.p_value, r.n,
                std::string(r.insufficient ? "insufficient" : "ok"));
    }
    return out;
}

// Aligned plain-text rendering with significance stars at p < .001.
inline std::string correlation_table(const CorrelationReport& report) {
    std::size_t width = 8;
    for (const auto& r : report.rows) width = std::max(width, r.feature.size());
    std::ostringstream os;
    os << "feature";
    os << std::string(width - 7, ' ') << "  coefficient\n";
    for (const auto& r : report.rows) {
        os << r.feature << std::string(width - r.feature.size(), ' ') << "  ";
        if (r.insufficient) {
            os << "insufficient (n=" << r.n << ")";
        } else {
            os << format_double(*r.rho);
            if (*r.p_value < 0.001) os << " ***";
        }
        os << "\n";
    }
    return os.str();
}

inline std::string features_csv(std::span<const ThreadFeatures> features) {
    const auto& fractions = features.empty() ? kRewireFractions : features[0].rewire_fractions;
    std::string out = "thread_id,entropy,aspl,gcc,pct_one_comment,reciprocity";
    for (double f : fractions) out += ",reciprocity_rand" + format_double(f * 100);
    out +=
        ",comments,pct_non_voters,avg_comment_words,avg_score,duration_secs,"
        "comment_frequency,post_sentiment,pct_unsure_voters,star_join_share,voter_share\n";
    for (const auto& f : features) {
        csv_row(out, f.thread_id, f.entropy, f.aspl, f.gcc, f.pct_one_comment, f.reciprocity,
                f.reciprocity_rewired[0], f.reciprocity_rewired[1], f.reciprocity_rewired[2],
                f.comments, f.pct_non_voters, f.avg_comment_words, f.avg_score, f.duration_secs,
                f.comment_frequency, f.sentiment, f.pct_unsure_voters, f.star_join_share,
                f.voter_share);
    }
    return out;
}

}  // namespace threadnet
