#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "avgnet/balancing.hpp"
#include "avgnet/engine.hpp"
#include "avgnet/graph.hpp"
#include "avgnet/io.hpp"
#include "avgnet/lyapunov.hpp"
#include "support/oracles.hpp"

using namespace avgnet;

TEST_SUITE_BEGIN("balancing");

TEST_CASE("two nodes: one offer, one acceptance") {
    const auto g = GraphSnapshot::undirected(2, {{0, 1}});
    const RoundOutcome out = balancing_round({9.0, 3.0}, g);

    CHECK(out.new_values[0] == doctest::Approx(7.0));
    CHECK(out.new_values[1] == doctest::Approx(5.0));
    REQUIRE(out.accepted_exchanges.size() == 1);
    CHECK(out.accepted_exchanges[0].offerer == 0);
    CHECK(out.accepted_exchanges[0].acceptor == 1);
    CHECK(out.accepted_exchanges[0].amount == doctest::Approx(2.0));

    CHECK(out.implied_matrix(0, 0) == doctest::Approx(2.0 / 3.0));
    CHECK(out.implied_matrix(0, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(out.implied_matrix(1, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(out.implied_matrix(1, 1) == doctest::Approx(2.0 / 3.0));

    const nlohmann::json dumped = exchanges_to_json(out.accepted_exchanges);
    REQUIRE(dumped.size() == 1);
    CHECK(dumped[0].at("offerer") == 0);
    CHECK(dumped[0].at("acceptor") == 1);
    CHECK(dumped[0].at("amount") == doctest::Approx(2.0));
}

TEST_CASE("constant values: no offers, identity matrix") {
    const auto g = GraphSnapshot::complete(4);
    const RoundOutcome out = balancing_round({2.0, 2.0, 2.0, 2.0}, g);
    CHECK(out.accepted_exchanges.empty());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(out.implied_matrix(i, j) == (i == j ? 1.0 : 0.0));
    CHECK(out.new_values == NodeVector{2.0, 2.0, 2.0, 2.0});
}

TEST_CASE("path of three: middle node both gives and takes") {
    const auto path = GraphSnapshot::undirected(3, {{0, 1}, {1, 2}});
    const RoundOutcome out = balancing_round({9.0, 6.0, 3.0}, path);

    CHECK(out.new_values[0] == doctest::Approx(8.0));
    CHECK(out.new_values[1] == doctest::Approx(6.0));
    CHECK(out.new_values[2] == doctest::Approx(4.0));

    CHECK(out.implied_matrix(1, 0) == doctest::Approx(1.0 / 3.0));
    CHECK(out.implied_matrix(1, 1) == doctest::Approx(1.0 / 3.0));
    CHECK(out.implied_matrix(1, 2) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("largest incoming offer wins, ties to the lowest offerer index") {
    // Nodes 0 and 1 both offer to node 2; node 0's gap is larger.
    const auto g = GraphSnapshot::undirected(3, {{0, 2}, {1, 2}});
    const RoundOutcome out = balancing_round({9.0, 6.0, 0.0}, g);
    REQUIRE(out.accepted_exchanges.size() == 1);
    CHECK(out.accepted_exchanges[0].offerer == 0);
    CHECK(out.new_values[0] == doctest::Approx(6.0));
    CHECK(out.new_values[1] == doctest::Approx(6.0));
    CHECK(out.new_values[2] == doctest::Approx(3.0));

    // Equal offers: the lower index wins.
    const RoundOutcome tie = balancing_round({6.0, 6.0, 0.0}, g);
    REQUIRE(tie.accepted_exchanges.size() == 1);
    CHECK(tie.accepted_exchanges[0].offerer == 0);
}

TEST_CASE("offers go to the smallest-valued neighbor, ties to the lowest index") {
    const auto g = GraphSnapshot::undirected(4, {{0, 1}, {0, 2}, {0, 3}});
    const RoundOutcome out = balancing_round({9.0, 3.0, 1.0, 1.0}, g);
    bool found = false;
    for (const Exchange& e : out.accepted_exchanges) {
        if (e.offerer == 0) {
            found = true;
            CHECK(e.acceptor == 2);  // value 1 at indices 2 and 3; lowest index wins
        }
    }
    CHECK(found);
}

TEST_CASE("directed graphs rejected") {
    CHECK_THROWS_AS(balancing_round({1.0, 0.0}, GraphSnapshot(2, {{0, 1}})),
                    std::invalid_argument);
}

TEST_CASE("round invariants on random graphs") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        auto seq = TopologySequence::random_connected(9, 1, 0.3, seed);
        const GraphSnapshot g = seq.snapshot_at(0);
        const NodeVector x = oracle::random_vector(9, -4.0, 4.0, seed);
        const RoundOutcome out = balancing_round(x, g);

        // Implied matrix validates with eta = 1/3.
        CHECK(out.implied_matrix.eta == doctest::Approx(1.0 / 3.0));
        CHECK(validate_weight_matrix(out.implied_matrix).pass);

        // new_values equals the implied matrix applied to the old values.
        const NodeVector via_matrix = step(x, out.implied_matrix);
        for (std::size_t i = 0; i < x.size(); ++i)
            CHECK(std::abs(out.new_values[i] - via_matrix[i]) <= 1e-12);

        // The sum of values is conserved.
        double before = 0.0, after = 0.0;
        for (double v : x) before += v;
        for (double v : out.new_values) after += v;
        CHECK(std::abs(before - after) <= 1e-9);

        // Each row is supported on the closed neighborhood.
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                if (out.implied_matrix(i, j) > 0.0) CHECK((i == j || g.has_edge(j, i)));
    }
}

TEST_CASE("a node is influenced only by values within three hops") {
    // Path 0-1-2-3-4-5-6; nodes 4..6 are more than 3 hops from node 0.
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < 6; ++i) pairs.emplace_back(i, i + 1);
    const auto path = GraphSnapshot::undirected(7, pairs);

    const NodeVector base{5.0, 3.0, 8.0, 2.0, 9.0, 1.0, 4.0};
    NodeVector far = base;
    far[4] = -9.0;
    far[5] = 100.0;
    far[6] = 0.5;

    const RoundOutcome a = balancing_round(base, path);
    const RoundOutcome b = balancing_round(far, path);
    CHECK(a.new_values[0] == b.new_values[0]);

    // Removing an edge beyond distance 3 does not change node 0 either.
    const auto shorter = GraphSnapshot::undirected(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
    const RoundOutcome c = balancing_round(base, shorter);
    CHECK(a.new_values[0] == c.new_values[0]);
}

TEST_CASE("constant start is converged at round zero") {
    auto seq = TopologySequence::static_graph(GraphSnapshot::complete(3), 1);
    const RunReport report = run_balancing({4.0, 4.0, 4.0}, seq, 0.01, 100);
    REQUIRE(report.convergence_time.has_value());
    CHECK(*report.convergence_time == 0);
}

TEST_CASE("two-node run contracts the gap by one third per round") {
    auto seq = TopologySequence::static_graph(GraphSnapshot::undirected(2, {{0, 1}}), 1);
    const RunReport report = run_balancing({1.0, 0.0}, seq, 0.01, 100);
    REQUIRE(report.trajectory.size() >= 3);
    CHECK(report.trajectory[1].max == doctest::Approx(2.0 / 3.0));
    CHECK(report.trajectory[1].min == doctest::Approx(1.0 / 3.0));
    // Per-round variance factor is (1/3)^2.
    CHECK(report.trajectory[1].v / report.trajectory[0].v == doctest::Approx(1.0 / 9.0));
    CHECK(report.trajectory[2].v / report.trajectory[1].v == doctest::Approx(1.0 / 9.0));
    REQUIRE(report.convergence_time.has_value());
}

TEST_CASE("balancing runs satisfy the audit on random connected sequences") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const int n = 12;
        auto seq = TopologySequence::random_connected(n, 2, 0.2, seed);
        const NodeVector x0 = oracle::random_vector(n, 0.0, 1.0, seed);
        const RunReport report = run_balancing(x0, seq, 0.01, 4000);
        REQUIRE(report.convergence_time.has_value());
        CHECK(report.all_windows_ok());
        for (const WindowAudit& a : report.assumption_audit) {
            if (a.v_start > 0.0)
                CHECK((a.v_start - a.v_end) / a.v_start >= 1.0 / (6.0 * n * n) - 1e-12);
        }
        const double m0 = report.trajectory.front().mean;
        for (const TrajectoryPoint& p : report.trajectory) CHECK(std::abs(p.mean - m0) <= 1e-9);
    }
}

TEST_SUITE_END();
