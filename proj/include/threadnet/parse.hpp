#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include <threadnet/io.hpp>
#include <threadnet/record.hpp>

namespace threadnet {

// Field-name mapping from a dump's JSON keys onto RawMessage. Two built-in
// profiles cover PRAW-style and Pushshift-style exports; any other mapping
// can be loaded from a key-value config.
struct FormatProfile {
    std::string name = "praw";
    std::string id_key = "id";
    std::string parent_key = "parent_id";
    std::string thread_key = "thread_id";
    std::string author_key = "author";
    std::string created_key = "created_utc";
    std::string body_key = "body";
    std::string score_key = "score";
    std::string sentiment_key = "sentiment";
    // Pushshift fullname prefixes ("t1_", "t3_") stripped from id fields.
    std::vector<std::string> strip_prefixes;
    // Author strings treated as deleted accounts.
    std::vector<std::string> deleted_authors = {"[deleted]", "[removed]"};
    // Fallback body key for submissions (Pushshift posts carry selftext).
    std::string body_fallback_key;

    static FormatProfile praw() { return FormatProfile{}; }

    static FormatProfile pushshift() {
        FormatProfile p;
        p.name = "pushshift";
        p.thread_key = "link_id";
        p.strip_prefixes = {"t1_", "t3_", "t2_"};
        p.body_fallback_key = "selftext";
        return p;
    }

    static FormatProfile by_name(const std::string& name) {
        if (name == "praw") return praw();
        if (name == "pushshift") return pushshift();
        throw ConfigError("unknown format profile: " + name);
    }
};

namespace detail {

inline std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string tok;
    std::istringstream is(s);
    while (std::getline(is, tok, ',')) {
        if (!tok.empty()) out.push_back(tok);
    }
    return out;
}

}  // namespace detail

// Field-name overrides from a key-value config, on top of a named base
// profile. Keys: field.id, field.parent, field.thread, field.author,
// field.created, field.body, field.body_fallback, field.score,
// field.sentiment, strip_prefixes, deleted_authors (comma lists).
template <typename Config>
FormatProfile profile_from_config(FormatProfile base, const Config& cfg) {
    if (cfg.has("field.id")) base.id_key = cfg.get("field.id");
    if (cfg.has("field.parent")) base.parent_key = cfg.get("field.parent");
    if (cfg.has("field.thread")) base.thread_key = cfg.get("field.thread");
    if (cfg.has("field.author")) base.author_key = cfg.get("field.author");
    if (cfg.has("field.created")) base.created_key = cfg.get("field.created");
    if (cfg.has("field.body")) base.body_key = cfg.get("field.body");
    if (cfg.has("field.body_fallback")) base.body_fallback_key = cfg.get("field.body_fallback");
    if (cfg.has("field.score")) base.score_key = cfg.get("field.score");
    if (cfg.has("field.sentiment")) base.sentiment_key = cfg.get("field.sentiment");
    if (cfg.has("strip_prefixes")) base.strip_prefixes = detail::split_commas(cfg.get("strip_prefixes"));
    if (cfg.has("deleted_authors")) base.deleted_authors = detail::split_commas(cfg.get("deleted_authors"));
    return base;
}

struct ParseReport {
    std::uint64_t records_read = 0;
    std::uint64_t malformed_skipped = 0;
    std::uint64_t duplicates_removed = 0;
    std::uint64_t orphans_dropped = 0;
    std::uint64_t threads_dropped = 0;  // <2 comments or unbuildable
    std::uint64_t threads_kept = 0;

    void merge(const ParseReport& other) {
        records_read += other.records_read;
        malformed_skipped += other.malformed_skipped;
        duplicates_removed += other.duplicates_removed;
        orphans_dropped += other.orphans_dropped;
        threads_dropped += other.threads_dropped;
        threads_kept += other.threads_kept;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << "records_read: " << records_read << "\n"
           << "malformed_skipped: " << malformed_skipped << "\n"
           << "duplicates_removed: " << duplicates_removed << "\n"
           << "orphans_dropped: " << orphans_dropped << "\n"
           << "threads_dropped: " << threads_dropped << "\n"
           << "threads_kept: " << threads_kept << "\n";
        return os.str();
    }
};

namespace detail {

inline std::string strip_known_prefix(std::string s, const FormatProfile& profile) {
    for (const auto& p : profile.strip_prefixes) {
        if (s.size() > p.size() && s.compare(0, p.size(), p) == 0) return s.substr(p.size());
    }
    return s;
}

// One JSON object -> RawMessage. Returns nullopt for records missing
// required fields or carrying the wrong types.
inline std::optional<RawMessage> message_from_json(const nlohmann::json& j,
                                                   const FormatProfile& profile) {
    if (!j.is_object()) return std::nullopt;
    RawMessage m;

    auto id = j.find(profile.id_key);
    if (id == j.end() || !id->is_string()) return std::nullopt;
    m.id = strip_known_prefix(id->get<std::string>(), profile);
    if (m.id.empty()) return std::nullopt;

    auto created = j.find(profile.created_key);
    if (created == j.end() || !created->is_number()) return std::nullopt;
    m.created_at = static_cast<std::int64_t>(created->get<double>());
    if (m.created_at <= 0) return std::nullopt;

    auto parent = j.find(profile.parent_key);
    if (parent != j.end() && parent->is_string() && !parent->get<std::string>().empty()) {
        m.parent_id = strip_known_prefix(parent->get<std::string>(), profile);
    }

    auto thread = j.find(profile.thread_key);
    if (thread != j.end() && thread->is_string()) {
        m.thread_id = strip_known_prefix(thread->get<std::string>(), profile);
    } else if (!m.parent_id) {
        m.thread_id = m.id;  // a post is its own thread
    } else {
        return std::nullopt;  // comment without thread attribution
    }

    auto author = j.find(profile.author_key);
    if (author != j.end() && author->is_string()) {
        std::string a = author->get<std::string>();
        bool deleted = a.empty() || std::find(profile.deleted_authors.begin(),
                                              profile.deleted_authors.end(),
                                              a) != profile.deleted_authors.end();
        if (!deleted) m.author = std::move(a);
    }

    auto body = j.find(profile.body_key);
    if (body != j.end() && body->is_string()) {
        m.body = body->get<std::string>();
    } else if (!profile.body_fallback_key.empty()) {
        auto fb = j.find(profile.body_fallback_key);
        if (fb != j.end() && fb->is_string()) m.body = fb->get<std::string>();
    }

    auto score = j.find(profile.score_key);
    if (score != j.end() && score->is_number_integer()) m.score = score->get<std::int64_t>();

    auto sentiment = j.find(profile.sentiment_key);
    if (sentiment != j.end() && sentiment->is_number()) m.sentiment = sentiment->get<double>();

    return m;
}

}  // namespace detail

// Parses newline-delimited records grouped by thread into validated
// ThreadRecords. Malformed lines are counted and skipped; duplicate ids
// keep the earliest created_at; threads left with fewer than 2 comments
// are dropped. Order of the returned threads follows first appearance in
// the input.
inline std::vector<ThreadRecord> parse_records(std::vector<RawMessage> messages,
                                               ParseReport& report,
                                               const VoteExtraction& votes = {}) {
    std::vector<std::string> order;
    std::unordered_map<std::string, std::vector<RawMessage>> by_thread;
    for (auto& m : messages) {
        auto [it, inserted] = by_thread.try_emplace(m.thread_id);
        if (inserted) order.push_back(m.thread_id);
        it->second.push_back(std::move(m));
    }

    std::vector<ThreadRecord> threads;
    threads.reserve(order.size());
    for (const auto& tid : order) {
        try {
            ThreadRecord rec = build_thread(std::move(by_thread.at(tid)), votes);
            report.duplicates_removed += rec.duplicates_removed;
            report.orphans_dropped += rec.orphans_dropped;
            if (rec.comments.size() < 2) {
                ++report.threads_dropped;
                continue;
            }
            validate_thread(rec);
            ++report.threads_kept;
            threads.push_back(std::move(rec));
        } catch (const ThreadError&) {
            ++report.threads_dropped;
        }
    }
    return threads;
}

inline std::vector<ThreadRecord> parse_dump(LineReader& reader, const FormatProfile& profile,
                                            ParseReport& report,
                                            const VoteExtraction& votes = {}) {
    std::vector<RawMessage> messages;
    std::string line;
    while (reader.next(line)) {
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        ++report.records_read;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            ++report.malformed_skipped;
            continue;
        }
        auto m = detail::message_from_json(j, profile);
        if (!m) {
            ++report.malformed_skipped;
            continue;
        }
        messages.push_back(std::move(*m));
    }
    return parse_records(std::move(messages), report, votes);
}

inline std::vector<ThreadRecord> parse_dump_file(const std::string& path,
                                                 const FormatProfile& profile,
                                                 ParseReport& report,
                                                 const VoteExtraction& votes = {}) {
    LineReader reader(path);
    return parse_dump(reader, profile, report, votes);
}

// --- canonical store format -------------------------------------------
//
// One thread per file, newline-delimited, root first, PRAW-style keys.
// This is the format the generator emits and the analyzer consumes.

inline nlohmann::json message_to_json(const RawMessage& m) {
    nlohmann::json j;
    j["id"] = m.id;
    if (m.parent_id) j["parent_id"] = *m.parent_id;
    j["thread_id"] = m.thread_id;
    if (m.author) j["author"] = *m.author;
    j["created_utc"] = m.created_at;
    j["body"] = m.body;
    if (m.score) j["score"] = *m.score;
    if (m.sentiment) j["sentiment"] = *m.sentiment;
    return j;
}

inline std::string serialize_thread(const ThreadRecord& rec) {
    std::string out;
    out += message_to_json(rec.root).dump();
    out += '\n';
    for (const auto& c : rec.comments) {
        out += message_to_json(c).dump();
        out += '\n';
    }
    return out;
}

// Parses one serialized thread back. Throws on anything invalid: the
// store is produced by this library, so damage is a real error.
inline ThreadRecord parse_thread_text(const std::string& text,
                                      const VoteExtraction& votes = {}) {
    std::vector<RawMessage> messages;
    FormatProfile profile = FormatProfile::praw();
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw DataError("store record is not valid JSON");
        auto m = detail::message_from_json(j, profile);
        if (!m) throw DataError("store record has missing fields");
        messages.push_back(std::move(*m));
    }
    ThreadRecord rec = build_thread(std::move(messages), votes);
    validate_thread(rec);
    return rec;
}

}  // namespace threadnet
