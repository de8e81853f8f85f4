#include <doctest.h>

#include <threadnet/generate.hpp>
#include <threadnet/graph.hpp>

#include <numeric>
#include <queue>
#include <set>

using namespace threadnet;

namespace {

RawMessage msg(const std::string& id, const std::string& parent, const std::string& author,
               std::int64_t t, const std::string& body = "text") {
    RawMessage m;
    m.id = id;
    if (!parent.empty()) m.parent_id = parent;
    m.thread_id = "t";
    m.author = author;
    m.created_at = t;
    m.body = body;
    return m;
}

TemporalMultigraph star_graph() {
    std::vector<RawMessage> ms = {
        msg("p", "", "op", 100),
        msg("c1", "p", "a", 110, "NTA"),
        msg("c2", "p", "b", 120),
        msg("c3", "p", "c", 130, "yta sorry"),
    };
    return from_thread(build_thread(ms));
}

// Undirected connectivity check over the simple projection.
bool connected(const TemporalMultigraph& g) {
    std::size_t n = g.vertex_count();
    if (n == 0) return true;
    std::vector<std::vector<std::size_t>> adj(n);
    for (const auto& e : g.edges) {
        if (e.from != e.to) {
            adj[e.from].push_back(e.to);
            adj[e.to].push_back(e.from);
        }
    }
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> q;
    q.push(0);
    seen[0] = true;
    std::size_t visited = 1;
    while (!q.empty()) {
        auto v = q.front();
        q.pop();
        for (auto w : adj[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++visited;
                q.push(w);
            }
        }
    }
    return visited == n;
}

}  // namespace

TEST_CASE("star thread: one edge per comment, all star") {
    auto g = star_graph();
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 3);
    for (const auto& e : g.edges) {
        CHECK(e.is_star);
        CHECK(e.to == g.root_vertex);
        CHECK(e.depth == 1);
    }
    CHECK(g.vertex_names[g.root_vertex] == "op");
    // Root author carries no labels (authored no comments).
    CHECK(g.vertex_labels[g.root_vertex].empty());
}

TEST_CASE("double reply: multigraph keeps both, projection one") {
    std::vector<RawMessage> ms = {
        msg("p", "", "op", 100),
        msg("c1", "p", "a", 110),
        msg("c2", "p", "a", 120),
    };
    auto g = from_thread(build_thread(ms));
    CHECK(g.edge_count() == 2);
    auto proj = project_simple_directed(g);
    CHECK(proj.edges.size() == 1);
}

TEST_CASE("self-reply stays in the multigraph, leaves projections") {
    std::vector<RawMessage> ms = {
        msg("p", "", "op", 100),
        msg("c1", "p", "a", 110),
        msg("c2", "c1", "a", 120),  // a answers their own comment
    };
    auto g = from_thread(build_thread(ms));
    CHECK(g.edge_count() == 2);
    auto proj = project_simple_directed(g);
    CHECK(proj.edges.size() == 1);  // only a -> op

    auto snaps = replay_all(g, 1);
    CHECK(snaps.back().directed_edges.size() == 1);
    CHECK(snaps.back().undirected_edges.size() == 1);
}

TEST_CASE("replay cadence: every stride-th edge plus the final edge") {
    GeneratorParams p;
    p.n_comments = 5;
    p.seed = 5;
    auto g = from_thread(generate_thread(p));
    REQUIRE(g.edge_count() == 5);

    auto s1 = replay_all(g, 1);
    REQUIRE(s1.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(s1[i].k == i + 1);

    auto s2 = replay_all(g, 2);
    REQUIRE(s2.size() == 3);
    CHECK(s2[0].k == 2);
    CHECK(s2[1].k == 4);
    CHECK(s2[2].k == 5);
}

TEST_CASE("replay is cumulative and agrees across strides") {
    GeneratorParams p;
    p.n_comments = 60;
    p.p_revisit = 0.25;
    p.seed = 17;
    auto g = from_thread(generate_thread(p));

    auto s1 = replay_all(g, 1);
    for (std::size_t i = 1; i < s1.size(); ++i) {
        CHECK(s1[i].vertices.size() >= s1[i - 1].vertices.size());
        CHECK(s1[i].directed_edges.size() >= s1[i - 1].directed_edges.size());
    }

    for (int stride : {3, 7, 10}) {
        auto ss = replay_all(g, stride);
        for (const auto& snap : ss) {
            const auto& ref = s1[snap.k - 1];
            CHECK(snap.vertices == ref.vertices);
            CHECK(snap.directed_edges == ref.directed_edges);
            CHECK(snap.undirected_edges == ref.undirected_edges);
            CHECK(snap.t_k == ref.t_k);
        }
    }
}

TEST_CASE("empty graph replays to nothing") {
    TemporalMultigraph g;
    CHECK(replay_all(g, 1).empty());
}

TEST_CASE("star/periphery split partitions the edges") {
    std::vector<RawMessage> ms = {
        msg("p", "", "op", 100),
        msg("c1", "p", "a", 110),
        msg("c2", "c1", "b", 120),
        msg("c3", "p", "c", 130),
    };
    auto g = from_thread(build_thread(ms));
    auto [star, periphery] = split_star_periphery(g);
    CHECK(star.edge_count() == 2);
    CHECK(periphery.edge_count() == 1);
    CHECK(star.edge_count() + periphery.edge_count() == g.edge_count());
    CHECK(periphery.edges[0].depth == 2);

    auto all_star = star_graph();
    auto [s2, p2] = split_star_periphery(all_star);
    CHECK(s2.edge_count() == 3);
    CHECK(p2.edge_count() == 0);
}

TEST_CASE("partition property on generated corpora") {
    GeneratorParams p;
    p.n_comments = 150;
    p.p_revisit = 0.2;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        p.seed = seed;
        auto g = from_thread(generate_thread(p));
        auto [star, periphery] = split_star_periphery(g);
        CHECK(star.edge_count() + periphery.edge_count() == g.edge_count());
        for (const auto& e : star.edges) CHECK(e.is_star);
        for (const auto& e : periphery.edges) CHECK(!e.is_star);
    }
}

TEST_CASE("about p_root of users first appear in the star") {
    GeneratorParams p;
    p.n_comments = 4000;
    p.p_root = 0.6;
    p.p_revisit = 0.0;  // every comment is a fresh user
    p.seed = 23;
    auto g = from_thread(generate_thread(p));
    double frac = star_join_fraction(g);
    CHECK(frac > 0.55);
    CHECK(frac < 0.65);
}

TEST_CASE("full thread projections are connected when nothing was dropped") {
    GeneratorParams p;
    p.n_comments = 200;
    p.p_revisit = 0.3;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        p.seed = seed;
        auto rec = generate_thread(p);
        REQUIRE(rec.orphans_dropped == 0);
        CHECK(connected(from_thread(rec)));
    }
}

TEST_CASE("edge list export format") {
    auto g = star_graph();
    std::string text = export_edge_list(g);
    CHECK(text == "a\top\t110\t1\tNTA\nb\top\t120\t1\tNONE\nc\top\t130\t1\tYTA\n");
}

TEST_CASE("degree sample on the simple directed projection") {
    auto g = star_graph();
    auto deg = degree_sample(project_simple_directed(g));
    // op has in-degree 3, each commenter out-degree 1
    std::multiset<std::uint32_t> got(deg.begin(), deg.end());
    CHECK(got == std::multiset<std::uint32_t>{1, 1, 1, 3});
}
