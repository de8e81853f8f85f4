#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <threadnet/record.hpp>
#include <threadnet/rng.hpp>

namespace threadnet {

enum class Attachment { Uniform, DegreePreferential };

// Parameters of the synthetic thread model. Each comment picks a target
// (the post with probability p_root, otherwise an existing comment), an
// author (a returning participant with probability p_revisit), a vote by
// the per-subgraph probabilities, and an arrival delay drawn from an
// exponential with the per-subgraph mean. vote_slowdown > 1 adds a
// writing delay to voting comments: their posted timestamp trails their
// arrival by an extra exponential with mean (slowdown - 1) times the
// subgraph mean, so judgments take longer to appear than plain replies.
struct GeneratorParams {
    int n_comments = 100;
    double p_root = 0.6;
    Attachment attachment = Attachment::Uniform;
    double p_vote_star = 0.8;
    double p_vote_periphery = 0.3;
    std::array<double, 6> label_weights = {1, 1, 1, 1, 1, 1};
    double inter_arrival_star = 60.0;        // mean seconds
    double inter_arrival_periphery = 120.0;  // mean seconds
    double vote_slowdown = 1.0;              // inter-arrival multiplier for voting comments
    double p_revisit = 0.1;
    std::uint64_t seed = 0;

    void validate() const {
        auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (n_comments < 2) throw ConfigError("n_comments must be >= 2");
        if (!prob(p_root) || !prob(p_vote_star) || !prob(p_vote_periphery) || !prob(p_revisit))
            throw ConfigError("probabilities must lie in [0, 1]");
        double wsum = 0;
        for (double w : label_weights) {
            if (w < 0) throw ConfigError("label weights must be non-negative");
            wsum += w;
        }
        if (wsum <= 0) throw ConfigError("label weights must not all be zero");
        if (inter_arrival_star <= 0 || inter_arrival_periphery <= 0)
            throw ConfigError("inter-arrival means must be positive");
        if (vote_slowdown <= 0) throw ConfigError("vote_slowdown must be positive");
    }
};

namespace detail {

inline const char* kFillerWords[] = {
    "honestly", "the", "whole", "story", "reads", "like", "a", "mess", "but",
    "context", "matters", "here", "and", "everyone", "has", "their", "own",
    "reasons", "for", "acting", "that", "way", "so", "it", "depends", "on",
    "what", "was", "said", "before", "this", "happened",
};

inline std::string filler_text(Rng& rng) {
    std::size_t words = 3 + rng.below(10);
    std::string body;
    constexpr std::size_t n = sizeof(kFillerWords) / sizeof(kFillerWords[0]);
    for (std::size_t i = 0; i < words; ++i) {
        if (i) body += ' ';
        body += kFillerWords[rng.below(n)];
    }
    return body;
}

inline std::string comment_id(int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "c%06d", index);
    return buf;
}

}  // namespace detail

// Generates one synthetic thread. Deterministic for a fixed seed;
// timestamps are whole seconds and strictly increasing.
inline ThreadRecord generate_thread(const GeneratorParams& params) {
    params.validate();
    Rng rng(params.seed);

    std::string thread_id = "gen-" + std::to_string(params.seed);
    constexpr std::int64_t kEpochBase = 1'600'000'000;

    std::vector<RawMessage> messages;
    messages.reserve(static_cast<std::size_t>(params.n_comments) + 1);

    RawMessage root;
    root.id = "post";
    root.thread_id = thread_id;
    root.author = "op";
    root.created_at = kEpochBase;
    root.body = detail::filler_text(rng);
    root.score = static_cast<std::int64_t>(rng.below(5000));
    messages.push_back(root);

    struct CommentMeta {
        std::string id;
        std::string author;
        int depth;
        std::int64_t posted_at;
    };
    std::vector<CommentMeta> comments;
    comments.reserve(params.n_comments);
    std::vector<std::string> authors;          // distinct prior comment authors
    std::vector<std::size_t> reply_targets;    // comment index per received reply
    std::int64_t arrival = root.created_at;
    int next_user = 1;

    for (int i = 0; i < params.n_comments; ++i) {
        bool to_root = comments.empty() || rng.bernoulli(params.p_root);
        std::size_t target = 0;
        if (!to_root) {
            if (params.attachment == Attachment::DegreePreferential && !reply_targets.empty() &&
                rng.bernoulli(0.5)) {
                target = reply_targets[rng.below(reply_targets.size())];
            } else {
                target = rng.below(comments.size());
            }
        }
        int depth = to_root ? 1 : comments[target].depth + 1;

        std::string author;
        if (!authors.empty() && rng.bernoulli(params.p_revisit)) {
            author = authors[rng.below(authors.size())];
        } else {
            author = "u" + std::to_string(next_user++);
            authors.push_back(author);
        }

        bool votes = rng.bernoulli(depth == 1 ? params.p_vote_star : params.p_vote_periphery);
        std::string body;
        if (votes) {
            auto label = static_cast<Judgment>(rng.weighted(params.label_weights));
            body = std::string(to_string(label)) + " " + detail::filler_text(rng);
        } else {
            body = detail::filler_text(rng);
        }

        double mean = depth == 1 ? params.inter_arrival_star : params.inter_arrival_periphery;
        auto dt = static_cast<std::int64_t>(std::llround(rng.exponential(mean)));
        arrival += dt < 1 ? 1 : dt;

        // Writing delay: voting comments appear later than they arrive.
        std::int64_t posted = arrival;
        if (votes && params.vote_slowdown > 1.0) {
            posted += static_cast<std::int64_t>(
                std::llround(rng.exponential(mean * (params.vote_slowdown - 1.0))));
        }
        std::int64_t parent_posted = to_root ? root.created_at : comments[target].posted_at;
        if (posted <= parent_posted) posted = parent_posted + 1;

        RawMessage m;
        m.id = detail::comment_id(i + 1);
        m.parent_id = to_root ? root.id : comments[target].id;
        m.thread_id = thread_id;
        m.author = author;
        m.created_at = posted;
        m.body = std::move(body);
        m.score = static_cast<std::int64_t>(rng.below(200));
        messages.push_back(std::move(m));

        if (!to_root) reply_targets.push_back(target);
        comments.push_back({messages.back().id, author, depth, posted});
    }

    // Writing delays can reorder posting times; keep them strictly
    // increasing in posted order (children stay after their parents).
    std::sort(messages.begin() + 1, messages.end(),
              [](const RawMessage& a, const RawMessage& b) {
                  if (a.created_at != b.created_at) return a.created_at < b.created_at;
                  return a.id < b.id;
              });
    std::int64_t prev = root.created_at;
    std::unordered_map<std::string, std::int64_t> final_time;
    for (std::size_t i = 1; i < messages.size(); ++i) {
        std::int64_t floor_t = prev + 1;
        auto parent = final_time.find(*messages[i].parent_id);
        if (parent != final_time.end() && parent->second + 1 > floor_t) floor_t = parent->second + 1;
        if (messages[i].created_at < floor_t) messages[i].created_at = floor_t;
        prev = messages[i].created_at;
        final_time.emplace(messages[i].id, prev);
    }

    ThreadRecord rec = build_thread(std::move(messages));
    validate_thread(rec);
    return rec;
}

// Generates count_per_params threads for every entry of the params list.
// Thread j of the flattened corpus is generated with seed base_seed + j,
// so disjoint seed ranges yield disjoint corpora.
inline std::vector<ThreadRecord> generate_corpus(std::span<const GeneratorParams> params_list,
                                                 int count_per_params, std::uint64_t base_seed) {
    if (count_per_params <= 0) throw ConfigError("corpus thread count must be positive");
    std::vector<ThreadRecord> corpus;
    corpus.reserve(params_list.size() * static_cast<std::size_t>(count_per_params));
    std::uint64_t index = 0;
    for (const auto& base : params_list) {
        for (int i = 0; i < count_per_params; ++i, ++index) {
            GeneratorParams p = base;
            p.seed = base_seed + index;
            corpus.push_back(generate_thread(p));
        }
    }
    return corpus;
}

// --- presets -------------------------------------------------------------

inline GeneratorParams aita_like_params(int n_comments = 300) {
    GeneratorParams p;
    p.n_comments = n_comments;
    p.p_root = 0.65;
    p.attachment = Attachment::DegreePreferential;
    p.p_vote_star = 0.8;
    p.p_vote_periphery = 0.3;
    p.label_weights = {1.5, 0.3, 5.0, 0.3, 0.6, 0.6};  // verdict-skewed mix
    p.inter_arrival_star = 40.0;
    p.inter_arrival_periphery = 90.0;
    p.p_revisit = 0.05;
    return p;
}

inline GeneratorParams uniform_params(int n_comments = 300) {
    GeneratorParams p;
    p.n_comments = n_comments;
    p.p_root = 0.25;
    p.attachment = Attachment::Uniform;
    p.p_vote_star = 0.5;
    p.p_vote_periphery = 0.5;
    p.inter_arrival_star = 60.0;
    p.inter_arrival_periphery = 60.0;
    p.p_revisit = 0.1;
    return p;
}

inline GeneratorParams slow_votes_params(int n_comments = 300) {
    GeneratorParams p = aita_like_params(n_comments);
    p.p_vote_periphery = 0.45;
    p.vote_slowdown = 25.0;
    return p;
}

// Expands a named preset into a params list with thread sizes ramping
// linearly between min_size and max_size, one entry per thread.
inline std::vector<GeneratorParams> preset_corpus_params(const std::string& preset, int count,
                                                         int min_size = 60, int max_size = 900) {
    if (count <= 0) throw ConfigError("preset corpus count must be positive");
    if (min_size < 2 || max_size < min_size) throw ConfigError("invalid preset size range");
    std::vector<GeneratorParams> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        int size = count == 1 ? min_size
                              : min_size + static_cast<int>((static_cast<std::int64_t>(max_size - min_size) * i) /
                                                            (count - 1));
        if (preset == "aita-like") {
            out.push_back(aita_like_params(size));
        } else if (preset == "uniform") {
            out.push_back(uniform_params(size));
        } else if (preset == "slow-votes") {
            out.push_back(slow_votes_params(size));
        } else {
            throw ConfigError("unknown preset: " + preset);
        }
    }
    return out;
}

}  // namespace threadnet
