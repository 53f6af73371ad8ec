#include <doctest.h>

#include <stdexcept>

#include "avgnet/graph.hpp"
#include "avgnet/lyapunov.hpp"
#include "avgnet/rng.hpp"
#include "support/oracles.hpp"

using namespace avgnet;

TEST_SUITE_BEGIN("graph");

TEST_CASE("snapshot always carries self-edges and validates endpoints") {
    GraphSnapshot g(3, {{0, 1}});
    CHECK(g.has_edge(0, 0));
    CHECK(g.has_edge(1, 1));
    CHECK(g.has_edge(2, 2));
    CHECK(g.has_edge(0, 1));
    CHECK_FALSE(g.has_edge(1, 0));
    CHECK_THROWS_AS(GraphSnapshot(3, {{0, 3}}), std::invalid_argument);
    CHECK_THROWS_AS(GraphSnapshot(3, {{-1, 0}}), std::invalid_argument);
}

TEST_CASE("strong connectivity basics") {
    CHECK_FALSE(is_strongly_connected(GraphSnapshot::self_loops_only(3)));

    // Directed 3-cycle.
    CHECK(is_strongly_connected(GraphSnapshot(3, {{0, 1}, {1, 2}, {2, 0}})));

    // Single one-way edge: node 0 unreachable from node 1.
    CHECK_FALSE(is_strongly_connected(GraphSnapshot(2, {{0, 1}})));

    CHECK(is_strongly_connected(GraphSnapshot::complete(5)));
    CHECK(is_strongly_connected(GraphSnapshot(1, {})));
}

TEST_CASE("strong connectivity agrees with transitive closure on random graphs") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = static_cast<int>(rng.next_int(2, 7));
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && rng.next_unit() < 0.25) edges.emplace_back(i, j);
        GraphSnapshot g(n, std::move(edges));
        CHECK(is_strongly_connected(g) == oracle::strongly_connected_by_closure(g));
    }
}

TEST_CASE("union over a window merges edge sets") {
    const GraphSnapshot a(3, {{0, 1}});
    const GraphSnapshot b(3, {{1, 2}});
    auto seq = TopologySequence::periodic_graphs({a, b}, 2);

    SUBCASE("single-round window is that round") {
        const GraphSnapshot u = union_graph(seq, 0, 0);
        CHECK(u.has_edge(0, 1));
        CHECK_FALSE(u.has_edge(1, 2));
    }
    SUBCASE("two-round union holds both") {
        const GraphSnapshot u = union_graph(seq, 0, 1);
        CHECK(u.has_edge(0, 1));
        CHECK(u.has_edge(1, 2));
    }
    SUBCASE("identical snapshots unchanged") {
        auto rep = TopologySequence::static_graph(a, 3);
        const GraphSnapshot u = union_graph(rep, 0, 2);
        CHECK(u.edges == a.edges);
    }
    SUBCASE("monotone in the window") {
        const GraphSnapshot small = union_graph(seq, 0, 0);
        const GraphSnapshot big = union_graph(seq, 0, 1);
        for (const auto& e : small.edges) CHECK(big.has_edge(e.first, e.second));
    }
}

TEST_CASE("union respects horizon") {
    auto seq = TopologySequence::from_graphs(
        [](std::int64_t) { return GraphSnapshot::complete(2); }, 1, 3);
    CHECK_NOTHROW(union_graph(seq, 0, 2));
    CHECK_THROWS_AS(union_graph(seq, 0, 3), std::out_of_range);
    CHECK_THROWS_AS(union_graph(seq, 2, 1), std::invalid_argument);
}

TEST_CASE("window connectivity") {
    SUBCASE("static complete graph, any window length") {
        auto seq = TopologySequence::static_graph(GraphSnapshot::complete(4), 3);
        CHECK(check_window_connectivity(seq, 5));
    }
    SUBCASE("alternating pairs connect over a two-round window") {
        const auto g01 = GraphSnapshot::undirected(3, {{0, 1}});
        const auto g12 = GraphSnapshot::undirected(3, {{1, 2}});
        auto seq = TopologySequence::periodic_graphs({g01, g12}, 2);
        CHECK(check_window_connectivity(seq, 4));
        // The same rounds with window length 1 never connect all of {0,1,2}.
        auto seq1 = TopologySequence::periodic_graphs({g01, g12}, 1);
        CHECK_FALSE(check_window_connectivity(seq1, 2));
    }
    SUBCASE("permanently split graph fails") {
        const auto split = GraphSnapshot::undirected(4, {{0, 1}, {2, 3}});
        auto seq = TopologySequence::static_graph(split, 2);
        CHECK_FALSE(check_window_connectivity(seq, 3));
    }
}

TEST_CASE("cut crossing checker") {
    SUBCASE("constant values always pass") {
        auto seq = TopologySequence::static_graph(GraphSnapshot::self_loops_only(3), 1);
        CHECK(check_cut_crossing(seq, 0, {1.0, 1.0, 1.0}));
    }
    SUBCASE("one edge can cross both cuts") {
        // x = (3,2,1); pair {0,2} crosses both value cuts.
        auto seq = TopologySequence::static_graph(GraphSnapshot::undirected(3, {{0, 2}}), 1);
        CHECK(check_cut_crossing(seq, 0, {3.0, 2.0, 1.0}));
    }
    SUBCASE("uncrossed distinct cut fails") {
        // x = (3,2,1); pair {0,1} leaves the cut before node 2 uncrossed.
        auto seq = TopologySequence::static_graph(GraphSnapshot::undirected(3, {{0, 1}}), 1);
        CHECK_FALSE(check_cut_crossing(seq, 0, {3.0, 2.0, 1.0}));
    }
    SUBCASE("equal adjacent values exempt their cut") {
        auto seq = TopologySequence::static_graph(GraphSnapshot::undirected(3, {{0, 1}}), 1);
        CHECK(check_cut_crossing(seq, 0, {3.0, 2.0, 2.0}));
    }
}

TEST_CASE("cut crossing is invariant under relabeling equal values") {
    // Equal-valued nodes exempt their own cut, so any tie order passes or
    // fails together; exercise vectors full of ties on random graphs.
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 5;
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.next_unit() < 0.3) pairs.emplace_back(i, j);
        const auto g = GraphSnapshot::undirected(n, pairs);
        auto seq = TopologySequence::static_graph(g, 1);

        NodeVector x(n);
        for (double& v : x) v = static_cast<double>(rng.next_int(0, 2));  // many ties
        NodeVector shuffled = x;
        std::swap(shuffled[0], shuffled[1]);

        // Relabel nodes 0 and 1 along with their values: verdict must match.
        std::vector<std::pair<int, int>> swapped_pairs;
        for (const auto& [a, b] : pairs) {
            auto relabel = [](int v) { return v == 0 ? 1 : v == 1 ? 0 : v; };
            swapped_pairs.emplace_back(relabel(a), relabel(b));
        }
        auto seq_swapped = TopologySequence::static_graph(
            GraphSnapshot::undirected(n, swapped_pairs), 1);
        CHECK(check_cut_crossing(seq, 0, x) == check_cut_crossing(seq_swapped, 0, shuffled));
    }
}

TEST_CASE("window connectivity implies cut crossing for any values") {
    Rng rng(99);
    int connected_windows = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = static_cast<int>(rng.next_int(3, 8));
        const std::int64_t b = rng.next_int(1, 3);
        auto seq = TopologySequence::random_connected(n, b, 0.15, rng.next_u64());
        REQUIRE(check_window_connectivity(seq, 3));
        for (std::int64_t w = 0; w < 3; ++w) {
            const NodeVector x = oracle::random_vector(n, -1.0, 1.0, rng.next_u64());
            ++connected_windows;
            CHECK(check_cut_crossing(seq, w, x));
        }
    }
    CHECK(connected_windows == 300);
}

TEST_CASE("random sequences are deterministic in the seed and repaired to connect") {
    auto seq = TopologySequence::random_connected(6, 2, 0.1, 42);
    auto seq_again = TopologySequence::random_connected(6, 2, 0.1, 42);
    for (std::int64_t k = 0; k < 8; ++k)
        CHECK(seq.snapshot_at(k).edges == seq_again.snapshot_at(k).edges);
    CHECK(check_window_connectivity(seq, 50));

    // Even with zero base density the repair pass connects every window.
    auto sparse = TopologySequence::random_connected(5, 3, 0.0, 7);
    CHECK(check_window_connectivity(sparse, 20));
}

TEST_CASE("matrix-backed sequence exposes the support graph") {
    WeightMatrix A(2, 0.5);
    A(0, 0) = 0.5;
    A(0, 1) = 0.5;
    A(1, 0) = 0.5;
    A(1, 1) = 0.5;
    auto seq = TopologySequence::static_matrix(A, 1);
    CHECK(seq.has_matrices());
    const GraphSnapshot g = seq.snapshot_at(0);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));

    auto graphs_only = TopologySequence::static_graph(GraphSnapshot::complete(2), 1);
    CHECK_FALSE(graphs_only.has_matrices());
    CHECK_THROWS_AS(graphs_only.matrix_at(0), std::logic_error);
}

TEST_SUITE_END();
