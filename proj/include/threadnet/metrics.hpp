#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include <threadnet/csv.hpp>
#include <threadnet/graph.hpp>
#include <threadnet/rng.hpp>

namespace threadnet {

// Structural metrics of one snapshot. Density is measured on the simple
// directed projection; GCC, ASPL and diameter on the simple undirected
// projection, with ASPL/diameter restricted to the largest connected
// component. Absent values mark undefined cases (n < 2, all singletons).
struct MetricSample {
    std::size_t k = 0;
    std::int64_t t_k = 0;
    std::uint32_t n_vertices = 0;
    std::size_t n_multigraph_edges = 0;
    std::optional<double> density;
    double gcc = 0.0;
    std::optional<double> aspl;
    std::optional<int> diameter;
};

enum class MetricMode { ExactIncremental, LandmarkApprox, Oracle };

inline std::string to_string(MetricMode m) {
    switch (m) {
        case MetricMode::ExactIncremental: return "exact-incremental";
        case MetricMode::LandmarkApprox: return "landmark-approx";
        case MetricMode::Oracle: return "oracle";
    }
    return "?";
}

struct MetricTrace {
    std::string thread_id;
    MetricMode mode = MetricMode::ExactIncremental;
    std::vector<MetricSample> samples;
};

struct TraceOptions {
    int stride = 1;
    MetricMode mode = MetricMode::ExactIncremental;
    std::uint32_t vertex_cap = 8192;
    int landmark_sources = 64;
    std::uint64_t landmark_seed = 1;
};

namespace detail {

// Final divisions of the metric definitions. Both the incremental engine
// and the from-scratch oracle feed exact integer counts through these, so
// equal counts give bit-identical doubles.
inline std::optional<double> density_value(std::size_t m_simple_directed, std::size_t n) {
    if (n < 2) return std::nullopt;
    return static_cast<double>(m_simple_directed) /
           (static_cast<double>(n) * static_cast<double>(n - 1));
}

inline double gcc_value(std::uint64_t triangles, std::uint64_t triplets) {
    return triplets == 0 ? 0.0 : 3.0 * static_cast<double>(triangles) / static_cast<double>(triplets);
}

inline std::optional<double> aspl_value(std::uint64_t sum_dist, std::uint64_t n_pairs) {
    if (n_pairs == 0) return std::nullopt;
    return static_cast<double>(sum_dist) / static_cast<double>(n_pairs);
}

}  // namespace detail

// --- from-scratch oracle ---------------------------------------------
//
// Recomputes every metric per snapshot with plain BFS and triangle
// enumeration. Used as the verification path for the incremental engine
// and as the reference implementation of the metric definitions.

namespace oracle {

struct CompactGraph {
    std::vector<std::uint32_t> ids;                // local -> snapshot vertex id
    std::vector<std::vector<std::uint32_t>> adj;   // undirected simple
};

inline CompactGraph compact(const Snapshot& snap) {
    CompactGraph g;
    g.ids = snap.vertices;
    g.adj.resize(g.ids.size());
    std::unordered_map<std::uint32_t, std::uint32_t> local;
    local.reserve(g.ids.size());
    for (std::uint32_t i = 0; i < g.ids.size(); ++i) local.emplace(g.ids[i], i);
    for (const auto& [a, b] : snap.undirected_edges) {
        std::uint32_t la = local.at(a), lb = local.at(b);
        g.adj[la].push_back(lb);
        g.adj[lb].push_back(la);
    }
    return g;
}

inline std::optional<double> density(const Snapshot& snap) {
    return detail::density_value(snap.directed_edges.size(), snap.vertices.size());
}

inline std::pair<std::uint64_t, std::uint64_t> triangle_counts(const CompactGraph& g) {
    std::uint64_t triangles3 = 0;  // sum over edges of common neighbours; 3x triangle count
    std::uint64_t triplets = 0;
    std::vector<char> mark(g.adj.size(), 0);
    for (std::uint32_t u = 0; u < g.adj.size(); ++u) {
        std::uint64_t deg = g.adj[u].size();
        triplets += deg * (deg - 1) / 2;
        for (std::uint32_t v : g.adj[u]) {
            if (v >= u) continue;  // each edge once
            for (std::uint32_t w : g.adj[v]) mark[w] = 1;
            for (std::uint32_t w : g.adj[u]) triangles3 += mark[w];
            for (std::uint32_t w : g.adj[v]) mark[w] = 0;
        }
    }
    return {triangles3 / 3, triplets};
}

inline double gcc(const Snapshot& snap) {
    CompactGraph g = compact(snap);
    auto [triangles, triplets] = triangle_counts(g);
    return detail::gcc_value(triangles, triplets);
}

struct PathStats {
    std::uint64_t sum_dist = 0;  // over unordered pairs in the largest component
    std::uint64_t n_pairs = 0;
    int diameter = 0;
    std::size_t component_size = 0;
};

// BFS from every vertex of the largest connected component. Ties between
// components of equal size break toward the smallest contained vertex id.
inline PathStats path_stats(const CompactGraph& g) {
    std::size_t n = g.adj.size();
    std::vector<int> comp(n, -1);
    std::vector<std::uint32_t> queue;
    int n_comp = 0;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = n_comp;
        queue.assign(1, s);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            for (std::uint32_t w : g.adj[queue[qi]]) {
                if (comp[w] == -1) {
                    comp[w] = n_comp;
                    queue.push_back(w);
                }
            }
        }
        ++n_comp;
    }

    std::vector<std::size_t> size(n_comp, 0);
    for (std::uint32_t v = 0; v < n; ++v) ++size[comp[v]];
    int best = 0;
    for (int c = 1; c < n_comp; ++c) {
        if (size[c] > size[best]) best = c;  // first component found has the smallest vertex
    }

    PathStats stats;
    stats.component_size = size[best];
    if (stats.component_size < 2) return stats;

    std::vector<int> dist(n);
    std::uint64_t sum_ordered = 0;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (comp[s] != best) continue;
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        queue.assign(1, s);
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            std::uint32_t v = queue[qi];
            for (std::uint32_t w : g.adj[v]) {
                if (dist[w] == -1) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        for (std::uint32_t v = 0; v < n; ++v) {
            if (comp[v] == best && v != s) {
                sum_ordered += static_cast<std::uint64_t>(dist[v]);
                stats.diameter = std::max(stats.diameter, dist[v]);
            }
        }
    }
    stats.sum_dist = sum_ordered / 2;
    stats.n_pairs = static_cast<std::uint64_t>(stats.component_size) * (stats.component_size - 1) / 2;
    return stats;
}

inline std::optional<double> aspl(const Snapshot& snap) {
    PathStats s = path_stats(compact(snap));
    return detail::aspl_value(s.sum_dist, s.n_pairs);
}

inline std::optional<int> diameter(const Snapshot& snap) {
    PathStats s = path_stats(compact(snap));
    if (s.component_size < 2) return std::nullopt;
    return s.diameter;
}

inline MetricSample metrics(const Snapshot& snap, std::size_t n_multigraph_edges) {
    MetricSample sample;
    sample.k = snap.k;
    sample.t_k = snap.t_k;
    sample.n_vertices = static_cast<std::uint32_t>(snap.vertices.size());
    sample.n_multigraph_edges = n_multigraph_edges;
    sample.density = density(snap);
    CompactGraph g = compact(snap);
    auto [triangles, triplets] = triangle_counts(g);
    sample.gcc = detail::gcc_value(triangles, triplets);
    PathStats paths = path_stats(g);
    sample.aspl = detail::aspl_value(paths.sum_dist, paths.n_pairs);
    if (paths.component_size >= 2) sample.diameter = paths.diameter;
    return sample;
}

}  // namespace oracle

// Convenience wrappers exposing the oracle as the plain metric
// operations on a snapshot.
inline std::optional<double> density(const Snapshot& snap) { return oracle::density(snap); }
inline double gcc(const Snapshot& snap) { return oracle::gcc(snap); }
inline std::optional<double> aspl(const Snapshot& snap) { return oracle::aspl(snap); }
inline std::optional<int> diameter(const Snapshot& snap) { return oracle::diameter(snap); }

// --- exact incremental engine ------------------------------------------
//
// Maintains all-pairs shortest-path distances in a dense triangular
// 16-bit table together with running triangle/triplet counters, so every
// snapshot's metrics come out in O(1) beyond the insertion work itself.
// Per-component distance histograms make ASPL and diameter exact at each
// step. Grows-only: distances never increase.

class ExactMetricsEngine {
public:
    explicit ExactMetricsEngine(std::uint32_t vertex_cap = 8192) : cap_(vertex_cap) {}

    static constexpr std::uint16_t kInf = std::numeric_limits<std::uint16_t>::max();

    void add_multigraph_edge(VertexId from, VertexId to, std::int64_t t) {
        ++k_;
        t_k_ = t;
        std::uint32_t u = local(from);
        std::uint32_t v = local(to);
        if (u == v) return;  // self-loop: multigraph only

        if (directed_.emplace(pack(u, v)).second) ++m_directed_;

        std::uint32_t a = std::min(u, v), b = std::max(u, v);
        if (!undirected_.emplace(pack(a, b)).second) return;  // parallel edge

        adj_[a].push_back(b);
        adj_[b].push_back(a);

        // Running transitivity counters, evaluated after insertion.
        triplets_ += (adj_[a].size() - 1) + (adj_[b].size() - 1);
        triangles_ += common_neighbours(a, b);

        update_distances(a, b);
    }

    MetricSample sample() const {
        MetricSample s;
        s.k = k_;
        s.t_k = t_k_;
        s.n_vertices = n_;
        s.n_multigraph_edges = k_;
        s.density = detail::density_value(m_directed_, n_);
        s.gcc = detail::gcc_value(triangles_, triplets_);

        std::uint32_t root = largest_component_root();
        if (root != kNoVertex && uf_size_[root] >= 2) {
            std::uint64_t size = uf_size_[root];
            std::uint64_t pairs = size * (size - 1) / 2;
            s.aspl = detail::aspl_value(comp_sum_[root], pairs);
            const auto& hist = comp_hist_[root];
            for (std::size_t d = hist.size(); d-- > 0;) {
                if (hist[d] != 0) {
                    s.diameter = static_cast<int>(d);
                    break;
                }
            }
        }
        return s;
    }

    std::uint32_t vertex_count() const { return n_; }

    // Distance between two multigraph vertices; kInf when disconnected or
    // unknown. Exposed for the growth-monotonicity property tests.
    std::uint16_t distance(VertexId x, VertexId y) const {
        auto ix = index_.find(x);
        auto iy = index_.find(y);
        if (ix == index_.end() || iy == index_.end()) return kInf;
        return ix->second == iy->second ? 0 : dist(ix->second, iy->second);
    }

private:
    static constexpr std::uint32_t kNoVertex = std::numeric_limits<std::uint32_t>::max();

    static std::uint64_t pack(std::uint32_t a, std::uint32_t b) {
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    static std::size_t tri_index(std::uint32_t i, std::uint32_t j) {
        // i < j
        return static_cast<std::size_t>(j) * (j - 1) / 2 + i;
    }

    std::uint16_t dist(std::uint32_t i, std::uint32_t j) const {
        if (i == j) return 0;
        if (i > j) std::swap(i, j);
        return dist_[tri_index(i, j)];
    }

    void set_dist(std::uint32_t i, std::uint32_t j, std::uint16_t d) {
        if (i > j) std::swap(i, j);
        dist_[tri_index(i, j)] = d;
    }

    std::uint32_t local(VertexId v) {
        auto [it, inserted] = index_.emplace(v, n_);
        if (!inserted) return it->second;
        if (n_ >= cap_) {
            throw ConfigError("graph exceeds the exact-mode vertex cap (" + std::to_string(cap_) +
                              "); use landmark-approx mode");
        }
        std::uint32_t id = n_++;
        dist_.insert(dist_.end(), id, kInf);  // row of distances to all previous vertices
        adj_.emplace_back();
        uf_parent_.push_back(id);
        uf_size_.push_back(1);
        uf_min_.push_back(id);
        members_.push_back({id});
        comp_sum_.push_back(0);
        comp_hist_.emplace_back();
        return id;
    }

    std::uint32_t find(std::uint32_t x) const {
        while (uf_parent_[x] != x) x = uf_parent_[x];
        return x;
    }

    std::uint64_t common_neighbours(std::uint32_t a, std::uint32_t b) {
        if (adj_[a].size() > adj_[b].size()) std::swap(a, b);
        mark_.resize(n_, 0);
        ++stamp_;
        for (std::uint32_t w : adj_[a]) mark_[w] = stamp_;
        std::uint64_t count = 0;
        for (std::uint32_t w : adj_[b]) count += mark_[w] == stamp_;
        return count;
    }

    void bump_hist(std::vector<std::uint64_t>& hist, std::uint16_t d) {
        if (hist.size() <= d) hist.resize(d + 1, 0);
        ++hist[d];
    }

    // New undirected simple edge (a, b): either merges two components (all
    // cross distances route through the new edge) or relaxes pairs inside
    // one component via d'(x,y) = min(d(x,y), d(x,a)+1+d(b,y), d(x,b)+1+d(a,y)).
    void update_distances(std::uint32_t a, std::uint32_t b) {
        std::uint32_t ra = find(a), rb = find(b);
        if (ra != rb) {
            merge_components(ra, a, rb, b);
            return;
        }

        auto& sum = comp_sum_[ra];
        auto& hist = comp_hist_[ra];
        const auto& members = members_[ra];

        // Only x strictly nearer to a and y strictly nearer to b can
        // improve through the new edge.
        side_a_.clear();
        side_b_.clear();
        for (std::uint32_t x : members) {
            std::uint16_t da = dist(x, a);
            std::uint16_t db = dist(x, b);
            if (da < db) side_a_.push_back({x, da});
            else if (db < da) side_b_.push_back({x, db});
        }
        for (const auto& [x, dxa] : side_a_) {
            for (const auto& [y, dyb] : side_b_) {
                std::uint16_t cand = static_cast<std::uint16_t>(dxa + 1 + dyb);
                std::uint16_t old = dist(x, y);
                if (cand < old) {
                    set_dist(x, y, cand);
                    sum -= old - cand;
                    --hist[old];
                    bump_hist(hist, cand);
                }
            }
        }
    }

    void merge_components(std::uint32_t ra, std::uint32_t a, std::uint32_t rb, std::uint32_t b) {
        // Work from the smaller side into the larger one.
        if (members_[ra].size() > members_[rb].size()) {
            std::swap(ra, rb);
            std::swap(a, b);
        }
        auto& small = members_[ra];
        auto& large = members_[rb];

        auto& sum = comp_sum_[rb];
        auto& hist = comp_hist_[rb];
        sum += comp_sum_[ra];
        if (comp_hist_[ra].size() > hist.size()) hist.resize(comp_hist_[ra].size(), 0);
        for (std::size_t d = 0; d < comp_hist_[ra].size(); ++d) hist[d] += comp_hist_[ra][d];

        for (std::uint32_t x : small) {
            std::uint16_t dxa = dist(x, a);
            for (std::uint32_t y : large) {
                std::uint16_t d = static_cast<std::uint16_t>(dxa + 1 + dist(b, y));
                set_dist(x, y, d);
                sum += d;
                bump_hist(hist, d);
            }
        }

        uf_parent_[ra] = rb;
        uf_size_[rb] += uf_size_[ra];
        uf_min_[rb] = std::min(uf_min_[rb], uf_min_[ra]);
        large.insert(large.end(), small.begin(), small.end());
        small.clear();
        small.shrink_to_fit();
        comp_sum_[ra] = 0;
        comp_hist_[ra].clear();
    }

    std::uint32_t largest_component_root() const {
        std::uint32_t best = kNoVertex;
        for (std::uint32_t v = 0; v < n_; ++v) {
            if (uf_parent_[v] != v) continue;
            if (best == kNoVertex || uf_size_[v] > uf_size_[best] ||
                (uf_size_[v] == uf_size_[best] && uf_min_[v] < uf_min_[best])) {
                best = v;
            }
        }
        return best;
    }

    std::uint32_t cap_;
    std::uint32_t n_ = 0;
    std::size_t k_ = 0;
    std::int64_t t_k_ = 0;
    std::unordered_map<VertexId, std::uint32_t> index_;
    std::vector<std::uint16_t> dist_;  // triangular, j*(j-1)/2 + i for i < j
    std::vector<std::vector<std::uint32_t>> adj_;
    std::unordered_set<std::uint64_t> directed_;
    std::unordered_set<std::uint64_t> undirected_;
    std::size_t m_directed_ = 0;
    std::uint64_t triangles_ = 0;
    std::uint64_t triplets_ = 0;

    std::vector<std::uint32_t> uf_parent_;
    std::vector<std::uint64_t> uf_size_;
    std::vector<std::uint32_t> uf_min_;
    std::vector<std::vector<std::uint32_t>> members_;
    std::vector<std::uint64_t> comp_sum_;                // per root
    std::vector<std::vector<std::uint64_t>> comp_hist_;  // per root, by distance

    std::vector<std::uint32_t> mark_;
    std::uint32_t stamp_ = 0;
    std::vector<std::pair<std::uint32_t, std::uint16_t>> side_a_, side_b_;
};

// --- landmark approximation ----------------------------------------------
//
// Same exact density/GCC counters, but ASPL and diameter are estimated
// from BFS over a seeded sample of source vertices inside the largest
// component. Meant for threads past the exact-mode vertex cap.

class LandmarkMetricsEngine {
public:
    LandmarkMetricsEngine(int sources, std::uint64_t seed) : sources_(sources), rng_(seed) {
        if (sources < 1) throw ConfigError("landmark source count must be >= 1");
    }

    void add_multigraph_edge(VertexId from, VertexId to, std::int64_t t) {
        ++k_;
        t_k_ = t;
        std::uint32_t u = local(from);
        std::uint32_t v = local(to);
        if (u == v) return;

        if (directed_.emplace(pack(u, v)).second) ++m_directed_;
        std::uint32_t a = std::min(u, v), b = std::max(u, v);
        if (!undirected_.emplace(pack(a, b)).second) return;

        adj_[a].push_back(b);
        adj_[b].push_back(a);
        triplets_ += (adj_[a].size() - 1) + (adj_[b].size() - 1);
        triangles_ += common_neighbours(a, b);

        std::uint32_t ra = find(a), rb = find(b);
        if (ra != rb) {
            if (members_[ra].size() > members_[rb].size()) std::swap(ra, rb);
            uf_parent_[ra] = rb;
            uf_size_[rb] += uf_size_[ra];
            uf_min_[rb] = std::min(uf_min_[rb], uf_min_[ra]);
            members_[rb].insert(members_[rb].end(), members_[ra].begin(), members_[ra].end());
            members_[ra].clear();
            members_[ra].shrink_to_fit();
        }
    }

    MetricSample sample() {
        MetricSample s;
        s.k = k_;
        s.t_k = t_k_;
        s.n_vertices = n_;
        s.n_multigraph_edges = k_;
        s.density = detail::density_value(m_directed_, n_);
        s.gcc = detail::gcc_value(triangles_, triplets_);

        std::uint32_t root = largest_component_root();
        if (root == kNoVertex || uf_size_[root] < 2) return s;
        const auto& members = members_[root];

        // Sample sources without replacement; small components are walked
        // in full, which makes the estimate exact there.
        pick_.assign(members.begin(), members.end());
        std::size_t take = std::min<std::size_t>(sources_, pick_.size());
        for (std::size_t i = 0; i < take; ++i) {
            std::size_t j = i + rng_.below(pick_.size() - i);
            std::swap(pick_[i], pick_[j]);
        }

        std::uint64_t sum = 0;
        int max_d = 0;
        dist_.resize(n_);
        for (std::size_t i = 0; i < take; ++i) {
            std::uint32_t src = pick_[i];
            ++stamp_;
            queue_.assign(1, src);
            dist_[src] = 0;
            seen_.resize(n_, 0);
            seen_[src] = stamp_;
            for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
                std::uint32_t v = queue_[qi];
                for (std::uint32_t w : adj_[v]) {
                    if (seen_[w] != stamp_) {
                        seen_[w] = stamp_;
                        dist_[w] = dist_[v] + 1;
                        sum += static_cast<std::uint64_t>(dist_[w]);
                        max_d = std::max(max_d, dist_[w]);
                        queue_.push_back(w);
                    }
                }
            }
        }
        std::uint64_t targets = static_cast<std::uint64_t>(take) * (members.size() - 1);
        if (targets > 0) {
            s.aspl = static_cast<double>(sum) / static_cast<double>(targets);
            s.diameter = max_d;
        }
        return s;
    }

    std::uint32_t vertex_count() const { return n_; }

private:
    static constexpr std::uint32_t kNoVertex = std::numeric_limits<std::uint32_t>::max();

    static std::uint64_t pack(std::uint32_t a, std::uint32_t b) {
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    std::uint32_t local(VertexId v) {
        auto [it, inserted] = index_.emplace(v, n_);
        if (!inserted) return it->second;
        std::uint32_t id = n_++;
        adj_.emplace_back();
        uf_parent_.push_back(id);
        uf_size_.push_back(1);
        uf_min_.push_back(id);
        members_.push_back({id});
        return id;
    }

    std::uint32_t find(std::uint32_t x) const {
        while (uf_parent_[x] != x) x = uf_parent_[x];
        return x;
    }

    std::uint64_t common_neighbours(std::uint32_t a, std::uint32_t b) {
        if (adj_[a].size() > adj_[b].size()) std::swap(a, b);
        mark_.resize(n_, 0);
        ++mark_stamp_;
        for (std::uint32_t w : adj_[a]) mark_[w] = mark_stamp_;
        std::uint64_t count = 0;
        for (std::uint32_t w : adj_[b]) count += mark_[w] == mark_stamp_;
        return count;
    }

    std::uint32_t largest_component_root() const {
        std::uint32_t best = kNoVertex;
        for (std::uint32_t v = 0; v < n_; ++v) {
            if (uf_parent_[v] != v) continue;
            if (best == kNoVertex || uf_size_[v] > uf_size_[best] ||
                (uf_size_[v] == uf_size_[best] && uf_min_[v] < uf_min_[best])) {
                best = v;
            }
        }
        return best;
    }

    int sources_;
    Rng rng_;
    std::uint32_t n_ = 0;
    std::size_t k_ = 0;
    std::int64_t t_k_ = 0;
    std::unordered_map<VertexId, std::uint32_t> index_;
    std::vector<std::vector<std::uint32_t>> adj_;
    std::unordered_set<std::uint64_t> directed_;
    std::unordered_set<std::uint64_t> undirected_;
    std::size_t m_directed_ = 0;
    std::uint64_t triangles_ = 0;
    std::uint64_t triplets_ = 0;
    std::vector<std::uint32_t> uf_parent_;
    std::vector<std::uint64_t> uf_size_;
    std::vector<std::uint32_t> uf_min_;
    std::vector<std::vector<std::uint32_t>> members_;

    std::vector<std::uint32_t> mark_;
    std::uint32_t mark_stamp_ = 0;
    std::vector<std::uint32_t> pick_, queue_;
    std::vector<int> dist_;
    std::vector<std::uint32_t> seen_;
    std::uint32_t stamp_ = 0;
};

// Replays g edge by edge and samples metrics every stride edges plus at
// the final edge. Exact mode refuses graphs past the vertex cap.
inline MetricTrace trace(const TemporalMultigraph& g, const TraceOptions& opt = {}) {
    if (opt.stride < 1) throw ConfigError("trace stride must be >= 1");
    MetricTrace out;
    out.thread_id = g.thread_id;
    out.mode = opt.mode;

    if (opt.mode == MetricMode::Oracle) {
        ReplayCursor cursor(g, opt.stride);
        Snapshot snap;
        while (cursor.next(snap)) out.samples.push_back(oracle::metrics(snap, snap.k));
        return out;
    }

    if (opt.mode == MetricMode::ExactIncremental && g.vertex_count() > opt.vertex_cap) {
        throw ConfigError("thread has " + std::to_string(g.vertex_count()) +
                          " vertices, above the exact-mode cap of " + std::to_string(opt.vertex_cap) +
                          "; use landmark-approx mode");
    }

    auto run = [&](auto& engine) {
        const std::size_t n_edges = g.edges.size();
        for (std::size_t i = 0; i < n_edges; ++i) {
            const TimedEdge& e = g.edges[i];
            engine.add_multigraph_edge(e.from, e.to, e.t);
            if ((i + 1) % static_cast<std::size_t>(opt.stride) == 0 || i + 1 == n_edges) {
                out.samples.push_back(engine.sample());
            }
        }
    };

    if (opt.mode == MetricMode::ExactIncremental) {
        ExactMetricsEngine engine(opt.vertex_cap);
        run(engine);
    } else {
        LandmarkMetricsEngine engine(opt.landmark_sources, opt.landmark_seed);
        run(engine);
    }
    return out;
}

// CSV serialization: `k,t,n,m,density,gcc,aspl,diameter`, absent values
// as empty fields.
inline std::string trace_to_csv(const MetricTrace& trace) {
    std::string out = "k,t,n,m,density,gcc,aspl,diameter\n";
    for (const auto& s : trace.samples) {
        csv_row(out, s.k, s.t_k, static_cast<std::uint64_t>(s.n_vertices), s.n_multigraph_edges,
                s.density, s.gcc, s.aspl, s.diameter);
    }
    return out;
}

}  // namespace threadnet
