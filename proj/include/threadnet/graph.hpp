#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <threadnet/record.hpp>

namespace threadnet {

using VertexId = std::uint32_t;

// One reply edge: comment author -> author of the parent message.
struct TimedEdge {
    VertexId from = 0;
    VertexId to = 0;
    std::int64_t t = 0;         // comment timestamp
    std::int64_t parent_t = 0;  // parent message timestamp (response times)
    std::string message_id;
    int depth = 0;
    bool is_star = false;  // depth == 1, i.e. a reply to the post
    Judgment label = Judgment::None;
};

// Directed temporal multigraph of user interactions in one thread.
// Vertices are users; x(v) collects the judgment labels of every comment
// authored by v. Edges are sorted by (t, message_id) and never removed.
struct TemporalMultigraph {
    std::string thread_id;
    std::vector<std::string> vertex_names;
    std::vector<std::vector<Judgment>> vertex_labels;
    std::vector<TimedEdge> edges;
    VertexId root_vertex = 0;
    std::int64_t root_t = 0;

    std::size_t vertex_count() const { return vertex_names.size(); }
    std::size_t edge_count() const { return edges.size(); }
};

inline TemporalMultigraph from_thread(const ThreadRecord& rec) {
    TemporalMultigraph g;
    g.thread_id = rec.thread_id;
    g.root_t = rec.root.created_at;

    std::unordered_map<std::string, VertexId> index;
    auto vertex = [&](const std::string& name) -> VertexId {
        auto [it, inserted] = index.emplace(name, static_cast<VertexId>(g.vertex_names.size()));
        if (inserted) {
            g.vertex_names.push_back(name);
            g.vertex_labels.emplace_back();
        }
        return it->second;
    };

    g.root_vertex = vertex(author_of(rec.root));

    std::unordered_map<std::string, std::size_t> comment_at;  // id -> index in rec.comments
    comment_at.reserve(rec.comments.size());
    for (std::size_t i = 0; i < rec.comments.size(); ++i) comment_at.emplace(rec.comments[i].id, i);

    g.edges.reserve(rec.comments.size());
    for (std::size_t i = 0; i < rec.comments.size(); ++i) {
        const RawMessage& c = rec.comments[i];
        const std::string& parent_id = *c.parent_id;

        TimedEdge e;
        e.from = vertex(author_of(c));
        if (parent_id == rec.root.id) {
            e.to = g.root_vertex;
            e.parent_t = rec.root.created_at;
        } else {
            const RawMessage& parent = rec.comments[comment_at.at(parent_id)];
            e.to = vertex(author_of(parent));
            e.parent_t = parent.created_at;
        }
        e.t = c.created_at;
        e.message_id = c.id;
        e.depth = rec.depths[i];
        e.is_star = e.depth == 1;
        e.label = rec.labels[i];

        g.vertex_labels[e.from].push_back(e.label);
        g.edges.push_back(std::move(e));
    }
    return g;
}

// Cumulative state of the growing graph after k multigraph edges. The
// simple projections drop self-loops and parallel edges; the undirected
// pairs are stored as (min, max).
struct Snapshot {
    std::size_t k = 0;
    std::int64_t t_k = 0;
    std::vector<VertexId> vertices;                            // sorted
    std::vector<std::pair<VertexId, VertexId>> directed_edges;    // sorted
    std::vector<std::pair<VertexId, VertexId>> undirected_edges;  // sorted

    std::size_t vertex_count() const { return vertices.size(); }
};

// Emits a Snapshot after every stride-th multigraph edge, and always
// after the final edge. Snapshots are cumulative.
class ReplayCursor {
public:
    ReplayCursor(const TemporalMultigraph& g, int stride) : g_(&g), stride_(stride) {
        if (stride < 1) throw ConfigError("replay stride must be >= 1");
    }

    bool next(Snapshot& out) {
        const auto& edges = g_->edges;
        if (pos_ >= edges.size()) return false;
        std::size_t until = std::min(pos_ + static_cast<std::size_t>(stride_), edges.size());
        for (; pos_ < until; ++pos_) {
            const TimedEdge& e = edges[pos_];
            vertices_.insert(e.from);
            vertices_.insert(e.to);
            if (e.from != e.to) {
                directed_.emplace(e.from, e.to);
                undirected_.emplace(std::min(e.from, e.to), std::max(e.from, e.to));
            }
            t_last_ = e.t;
        }
        out.k = pos_;
        out.t_k = t_last_;
        out.vertices.assign(vertices_.begin(), vertices_.end());
        out.directed_edges.assign(directed_.begin(), directed_.end());
        out.undirected_edges.assign(undirected_.begin(), undirected_.end());
        return true;
    }

private:
    const TemporalMultigraph* g_;
    int stride_;
    std::size_t pos_ = 0;
    std::int64_t t_last_ = 0;
    std::set<VertexId> vertices_;
    std::set<std::pair<VertexId, VertexId>> directed_;
    std::set<std::pair<VertexId, VertexId>> undirected_;
};

inline std::vector<Snapshot> replay_all(const TemporalMultigraph& g, int stride) {
    ReplayCursor cursor(g, stride);
    std::vector<Snapshot> out;
    Snapshot s;
    while (cursor.next(s)) out.push_back(s);
    return out;
}

namespace detail {

// Rebuilds a compact multigraph from a subset of edges of g.
inline TemporalMultigraph subgraph_from_edges(const TemporalMultigraph& g,
                                              const std::vector<const TimedEdge*>& edges) {
    TemporalMultigraph sub;
    sub.thread_id = g.thread_id;
    sub.root_t = g.root_t;

    std::unordered_map<VertexId, VertexId> remap;
    auto vertex = [&](VertexId old) -> VertexId {
        auto [it, inserted] = remap.emplace(old, static_cast<VertexId>(sub.vertex_names.size()));
        if (inserted) {
            sub.vertex_names.push_back(g.vertex_names[old]);
            sub.vertex_labels.emplace_back();
        }
        return it->second;
    };

    sub.edges.reserve(edges.size());
    for (const TimedEdge* e : edges) {
        TimedEdge copy = *e;
        copy.from = vertex(e->from);
        copy.to = vertex(e->to);
        sub.vertex_labels[copy.from].push_back(copy.label);
        sub.edges.push_back(std::move(copy));
    }
    auto root = remap.find(g.root_vertex);
    sub.root_vertex = root == remap.end() ? 0 : root->second;
    return sub;
}

}  // namespace detail

// Splits the thread graph into the star (depth-1 edges, pointing at the
// post author) and the periphery (everything deeper). The two edge sets
// partition the multigraph's edges.
inline std::pair<TemporalMultigraph, TemporalMultigraph> split_star_periphery(
    const TemporalMultigraph& g) {
    std::vector<const TimedEdge*> star, periphery;
    for (const auto& e : g.edges) (e.is_star ? star : periphery).push_back(&e);
    return {detail::subgraph_from_edges(g, star), detail::subgraph_from_edges(g, periphery)};
}

// Fraction of comment authors whose first comment was a reply to the
// post, i.e. users who joined the thread in the star.
inline double star_join_fraction(const TemporalMultigraph& g) {
    std::unordered_map<VertexId, bool> first_star;
    for (const auto& e : g.edges) first_star.emplace(e.from, e.is_star);
    if (first_star.empty()) return 0.0;
    std::size_t star = 0;
    for (const auto& [v, s] : first_star) star += s ? 1 : 0;
    return static_cast<double>(star) / static_cast<double>(first_star.size());
}

// Fraction of comment authors who expressed at least one vote.
inline double voter_fraction(const TemporalMultigraph& g) {
    std::size_t commenters = 0, voters = 0;
    for (const auto& labels : g.vertex_labels) {
        if (labels.empty()) continue;
        ++commenters;
        for (Judgment j : labels) {
            if (is_voting(j)) {
                ++voters;
                break;
            }
        }
    }
    return commenters == 0 ? 0.0 : static_cast<double>(voters) / static_cast<double>(commenters);
}

// Simple directed projection: deduplicated (from, to) pairs, self-loops
// excluded. Vertex ids keep their multigraph values.
struct SimpleDigraph {
    std::uint32_t n_vertices = 0;
    std::vector<std::pair<VertexId, VertexId>> edges;  // sorted, unique
};

inline SimpleDigraph project_simple_directed(const TemporalMultigraph& g) {
    SimpleDigraph out;
    out.n_vertices = static_cast<std::uint32_t>(g.vertex_count());
    std::set<std::pair<VertexId, VertexId>> dedup;
    for (const auto& e : g.edges) {
        if (e.from != e.to) dedup.emplace(e.from, e.to);
    }
    out.edges.assign(dedup.begin(), dedup.end());
    return out;
}

enum class DegreeKind { Total, In, Out };

// Degree sample for power-law fitting; vertices with degree 0 (possible
// for isolated self-repliers) are skipped since the fit needs k >= 1.
inline std::vector<std::uint32_t> degree_sample(const SimpleDigraph& g,
                                                DegreeKind kind = DegreeKind::Total) {
    std::vector<std::uint32_t> deg(g.n_vertices, 0);
    for (const auto& [from, to] : g.edges) {
        if (kind != DegreeKind::In) ++deg[from];
        if (kind != DegreeKind::Out) ++deg[to];
    }
    std::vector<std::uint32_t> out;
    out.reserve(deg.size());
    for (std::uint32_t d : deg) {
        if (d > 0) out.push_back(d);
    }
    return out;
}

// Edge-list export: `from TAB to TAB t TAB depth TAB label`, one line per
// multigraph edge in time order.
inline std::string export_edge_list(const TemporalMultigraph& g) {
    std::string out;
    for (const auto& e : g.edges) {
        out += g.vertex_names[e.from];
        out += '\t';
        out += g.vertex_names[e.to];
        out += '\t';
        out += std::to_string(e.t);
        out += '\t';
        out += std::to_string(e.depth);
        out += '\t';
        out += to_string(e.label);
        out += '\n';
    }
    return out;
}

}  // namespace threadnet
