#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <threadnet/errors.hpp>
#include <threadnet/judgment.hpp>

namespace threadnet {

// One message of a conversation dump: the post (no parent_id) or a comment.
struct RawMessage {
    std::string id;
    std::optional<std::string> parent_id;  // absent for the post/root
    std::string thread_id;
    std::optional<std::string> author;     // absent when deleted
    std::int64_t created_at = 0;           // unix epoch seconds
    std::string body;
    std::optional<std::int64_t> score;
    std::optional<double> sentiment;       // precomputed, pass-through only

    bool operator==(const RawMessage&) const = default;
};

// Which comments are eligible to carry a vote. By default votes are
// extracted at every depth with no time window; the switches restrict
// extraction to first-level comments and/or to the community's 18-hour
// voting window after the post.
struct VoteExtraction {
    bool depth1_only = false;
    bool within_18h = false;

    static constexpr std::int64_t kWindowSeconds = 18 * 3600;

    bool eligible(int depth, std::int64_t comment_t, std::int64_t root_t) const {
        if (depth1_only && depth != 1) return false;
        if (within_18h && comment_t - root_t > kWindowSeconds) return false;
        return true;
    }
};

// A parsed conversation: the post plus its comment tree. Comments are
// sorted by (created_at, id); depths and judgment labels run parallel to
// the comment list. Root depth is 0, first-level comments are depth 1.
struct ThreadRecord {
    std::string thread_id;
    RawMessage root;
    std::vector<RawMessage> comments;
    std::vector<int> depths;
    std::vector<Judgment> labels;
    std::uint64_t duplicates_removed = 0;
    std::uint64_t orphans_dropped = 0;

    std::size_t comment_count() const { return comments.size(); }
};

// Vertex id used when a message's author is deleted. Keyed by the message
// id so the reply tree stays connected without merging distinct deleted
// users into one vertex.
inline std::string synthetic_author(const RawMessage& m) {
    return "deleted:" + m.id;
}

inline std::string author_of(const RawMessage& m) {
    return m.author ? *m.author : synthetic_author(m);
}

// Drops repeated message ids, keeping the earliest created_at (first seen
// on ties). Returns the number of messages removed.
inline std::uint64_t dedup_messages(std::vector<RawMessage>& messages) {
    std::unordered_map<std::string, std::size_t> first;
    std::uint64_t removed = 0;
    std::vector<RawMessage> out;
    out.reserve(messages.size());
    for (auto& m : messages) {
        auto [it, inserted] = first.emplace(m.id, out.size());
        if (inserted) {
            out.push_back(std::move(m));
        } else {
            ++removed;
            if (m.created_at < out[it->second].created_at) out[it->second] = std::move(m);
        }
    }
    messages = std::move(out);
    return removed;
}

// Assembles a ThreadRecord from the messages of one thread. Exactly one
// message must lack a parent_id (the root); comments whose parent is not
// in the set are dropped together with their whole subtree and counted.
// Throws ThreadError when no valid thread can be built.
inline ThreadRecord build_thread(std::vector<RawMessage> messages,
                                 const VoteExtraction& votes = {}) {
    ThreadRecord rec;
    rec.duplicates_removed = dedup_messages(messages);

    std::size_t root_count = 0;
    for (auto& m : messages) {
        if (!m.parent_id) {
            ++root_count;
            rec.root = m;
        }
    }
    if (root_count == 0) throw ThreadError("thread has no root message");
    if (root_count > 1) throw ThreadError("thread has multiple root messages");

    rec.thread_id = rec.root.thread_id.empty() ? rec.root.id : rec.root.thread_id;

    std::vector<RawMessage> comments;
    comments.reserve(messages.size() - 1);
    for (auto& m : messages) {
        if (m.parent_id) comments.push_back(std::move(m));
    }
    std::sort(comments.begin(), comments.end(), [](const RawMessage& a, const RawMessage& b) {
        if (a.created_at != b.created_at) return a.created_at < b.created_at;
        return a.id < b.id;
    });

    std::unordered_map<std::string, int> depth_of;
    depth_of.emplace(rec.root.id, 0);

    // A comment's parent always precedes it in time, so one pass over the
    // sorted list resolves every reachable depth; anything unresolved at
    // the end is an orphan subtree.
    std::vector<RawMessage> kept;
    kept.reserve(comments.size());
    bool progress = true;
    std::vector<bool> placed(comments.size(), false);
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < comments.size(); ++i) {
            if (placed[i]) continue;
            auto it = depth_of.find(*comments[i].parent_id);
            if (it == depth_of.end()) continue;
            depth_of.emplace(comments[i].id, it->second + 1);
            placed[i] = true;
            progress = true;
        }
    }
    for (std::size_t i = 0; i < comments.size(); ++i) {
        if (placed[i]) {
            kept.push_back(std::move(comments[i]));
        } else {
            ++rec.orphans_dropped;
        }
    }

    rec.comments = std::move(kept);
    rec.depths.reserve(rec.comments.size());
    rec.labels.reserve(rec.comments.size());
    for (const auto& c : rec.comments) {
        int depth = depth_of.at(c.id);
        rec.depths.push_back(depth);
        Judgment j = votes.eligible(depth, c.created_at, rec.root.created_at)
                         ? extract_judgment(c.body)
                         : Judgment::None;
        rec.labels.push_back(j);
    }
    return rec;
}

// Checks every ThreadRecord invariant; the generator and the parser share
// this path. Throws ThreadError on the first violation.
inline void validate_thread(const ThreadRecord& rec) {
    if (rec.root.parent_id) throw ThreadError(rec.thread_id + ": root has a parent_id");
    if (rec.root.id.empty()) throw ThreadError(rec.thread_id + ": root id empty");
    if (rec.comments.size() < 2)
        throw ThreadError(rec.thread_id + ": fewer than 2 comments");
    if (rec.depths.size() != rec.comments.size() || rec.labels.size() != rec.comments.size())
        throw ThreadError(rec.thread_id + ": annotation arrays out of sync");

    std::unordered_map<std::string, int> depth_of;
    depth_of.emplace(rec.root.id, 0);
    const RawMessage* prev = nullptr;
    for (std::size_t i = 0; i < rec.comments.size(); ++i) {
        const RawMessage& c = rec.comments[i];
        if (c.id.empty()) throw ThreadError(rec.thread_id + ": comment id empty");
        if (c.created_at <= 0) throw ThreadError(c.id + ": created_at not positive");
        if (!c.parent_id) throw ThreadError(c.id + ": comment without parent");
        if (prev && (prev->created_at > c.created_at ||
                     (prev->created_at == c.created_at && prev->id >= c.id)))
            throw ThreadError(rec.thread_id + ": comments not sorted by (created_at, id)");
        auto parent = depth_of.find(*c.parent_id);
        if (parent == depth_of.end())
            throw ThreadError(c.id + ": parent " + *c.parent_id + " not in record");
        if (rec.depths[i] != parent->second + 1)
            throw ThreadError(c.id + ": depth inconsistent with parent link");
        if (!depth_of.emplace(c.id, rec.depths[i]).second)
            throw ThreadError(c.id + ": duplicate message id");
        prev = &c;
    }
}

}  // namespace threadnet
