#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "trendnet/error.hpp"
#include "trendnet/temporal_graph.hpp"

#include "oracles.hpp"

using namespace trendnet;

namespace {

TemporalGraph graph_from(std::vector<StringEdge> rows) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const StringEdge& a, const StringEdge& b) { return a.time < b.time; });
    return TemporalGraph::build(make_edge_list(rows));
}

} // namespace

TEST_CASE("single edge registers both endpoints") {
    const auto g = graph_from({{"a", "b", 0.0}});
    CHECK(g.node_count() == 2);
    CHECK(g.edge_count() == 1);
    const NodeIndex b = *g.index_of("b");
    REQUIRE(g.in_times(b).size() == 1);
    CHECK(g.in_times(b)[0] == 0.0);
    CHECK(g.in_times(*g.index_of("a")).empty());
}

TEST_CASE("unsorted input builds the same graph as sorted input") {
    EdgeList unsorted;
    unsorted.ids = {"a", "b", "c"};
    unsorted.edges = {{0, 1, 5.0}, {1, 2, 1.0}, {0, 2, 3.0}};
    EdgeList sorted;
    sorted.ids = unsorted.ids;
    sorted.edges = {{1, 2, 1.0}, {0, 2, 3.0}, {0, 1, 5.0}};

    const auto g1 = TemporalGraph::build(std::move(unsorted));
    const auto g2 = TemporalGraph::build(std::move(sorted));
    CHECK(g1.edges() == g2.edges());
    CHECK(g1.ids() == g2.ids());
}

TEST_CASE("repeated interactions stay separate link events") {
    const auto g = graph_from({{"a", "b", 1.0}, {"a", "b", 2.0}});
    const NodeIndex b = *g.index_of("b");
    CHECK(g.in_times(b) == std::vector<double>{1.0, 2.0});
    CHECK(g.snapshot_at(3.0).in_degree[b] == 2);
}

TEST_CASE("empty edge list is rejected") {
    CHECK_THROWS_AS(TemporalGraph::build(EdgeList{}), Error);
}

TEST_CASE("snapshot keeps only links strictly before t") {
    const auto g = graph_from({{"a", "b", 1.0}, {"b", "c", 2.0}, {"c", "a", 3.0}});
    CHECK(g.snapshot_at(2.0).edge_count == 1);
    CHECK(g.snapshot_at(4.0).edge_count == 3);

    const auto empty = g.snapshot_at(1.0); // first edge sits exactly at t
    CHECK(empty.edge_count == 0);
    CHECK(empty.node_count() == 0);
}

TEST_CASE("snapshot node set tracks first incident link") {
    const auto g = graph_from({{"a", "b", 1.0}, {"c", "b", 5.0}});
    const auto snap = g.snapshot_at(2.0);
    CHECK(snap.node_count() == 2);
    CHECK(snap.has(*g.index_of("a")));
    CHECK(snap.has(*g.index_of("b")));
    CHECK_FALSE(snap.has(*g.index_of("c")));
}

TEST_CASE("window queries use half-open boundaries") {
    const auto g = graph_from({{"a", "b", 10.0}, {"a", "b", 20.0}, {"c", "b", 30.0}});
    const NodeIndex b = *g.index_of("b");
    CHECK(g.window_in_events(b, 15.0, 30.0) == std::vector<double>{20.0});
    CHECK(g.window_in_events(b, 0.0, 0.0).empty());
    CHECK(g.window_in_events(b, 10.0, 31.0) == std::vector<double>{10.0, 20.0, 30.0});
    CHECK(g.window_in_count(b, 10.0, 31.0) == 3);
    CHECK(g.window_in_events(999, 0.0, 100.0).empty());
    CHECK_THROWS_AS(g.window_in_events(b, 5.0, 4.0), Error);
}

TEST_CASE("make_snapshot presents every declared node") {
    const std::vector<TemporalEdge> edges = {{0, 1, 1.0}};
    const auto snap = make_snapshot(4, edges, 2.0);
    CHECK(snap.node_count() == 4);
    CHECK(snap.edge_count == 1);
    CHECK(snap.out[3].empty());
}

TEST_CASE("random graphs: snapshot degrees match window counts") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(oracle::uniform01(rng) * 20);
        auto edges = oracle::random_edges(rng, n, 60);
        std::vector<StringEdge> rows;
        for (const auto& e : edges)
            rows.push_back({std::to_string(e.source), std::to_string(e.target), e.time});
        const auto g = graph_from(rows);

        const double t1 = oracle::uniform01(rng) * 100.0;
        const double t2 = t1 + oracle::uniform01(rng) * 50.0;
        const auto s1 = g.snapshot_at(t1);
        const auto s2 = g.snapshot_at(t2);

        std::int64_t total = 0;
        for (std::size_t v = 0; v < g.node_count(); ++v) {
            const auto idx = static_cast<NodeIndex>(v);
            CHECK(s1.in_degree[v] == g.window_in_count(idx, -1e300, t1));
            total += s1.in_degree[v];
        }
        CHECK(total == static_cast<std::int64_t>(s1.edge_count));
        CHECK(s1.edge_count <= s2.edge_count); // snapshots grow with t
        for (const auto v : s1.nodes) CHECK(s2.has(v));
    }
}
