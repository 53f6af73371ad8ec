#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "avgnet/engine.hpp"
#include "avgnet/graph.hpp"
#include "avgnet/rng.hpp"
#include "avgnet/weights.hpp"
#include "support/oracles.hpp"

using namespace avgnet;

TEST_SUITE_BEGIN("weights");

namespace {

WeightMatrix make2(double a00, double a01, double a10, double a11, double eta) {
    WeightMatrix A(2, eta);
    A(0, 0) = a00;
    A(0, 1) = a01;
    A(1, 0) = a10;
    A(1, 1) = a11;
    return A;
}

}  // namespace

TEST_CASE("validation accepts doubly stochastic matrices") {
    CHECK(validate_weight_matrix(WeightMatrix::identity(3)).pass);
    CHECK(validate_weight_matrix(make2(0.5, 0.5, 0.5, 0.5, 0.5)).pass);
}

TEST_CASE("validation rejects column-sum violations with indices") {
    const auto report = validate_weight_matrix(make2(1.0, 0.0, 0.5, 0.5, 0.5));
    CHECK_FALSE(report.pass);
    bool found_col0 = false, found_col1 = false;
    for (const auto& v : report.violations) {
        if (v.find("column 0") != std::string::npos) found_col0 = true;
        if (v.find("column 1") != std::string::npos) found_col1 = true;
    }
    CHECK(found_col0);
    CHECK(found_col1);
}

TEST_CASE("validation flags zero diagonal, negatives and sub-eta entries") {
    CHECK_FALSE(validate_weight_matrix(make2(0.0, 1.0, 1.0, 0.0, 1.0)).pass);
    CHECK_FALSE(validate_weight_matrix(make2(1.5, -0.5, -0.5, 1.5, 0.5)).pass);
    CHECK_FALSE(validate_weight_matrix(make2(0.9, 0.1, 0.1, 0.9, 0.2)).pass);  // 0.1 < eta
}

TEST_CASE("gram weights") {
    SUBCASE("identity") {
        const GramMatrix W = gram_weights(WeightMatrix::identity(3));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(W(i, j) == doctest::Approx(i == j ? 1.0 : 0.0));
    }
    SUBCASE("uniform averaging matrix") {
        const GramMatrix W = gram_weights(make2(0.5, 0.5, 0.5, 0.5, 0.5));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(W(i, j) == doctest::Approx(0.5));
    }
    SUBCASE("2/3 matrix") {
        const double t = 2.0 / 3.0, o = 1.0 / 3.0;
        const GramMatrix W = gram_weights(make2(t, o, o, t, o));
        CHECK(W(0, 0) == doctest::Approx(5.0 / 9.0));
        CHECK(W(1, 1) == doctest::Approx(5.0 / 9.0));
        CHECK(W(0, 1) == doctest::Approx(4.0 / 9.0));
    }
}

TEST_CASE("gram positive entries are at least eta squared") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const WeightMatrix A = random_birkhoff_matrix(6, 3, 0.2, seed);
        const GramMatrix W = gram_weights(A);
        for (int i = 0; i < A.n; ++i)
            for (int j = 0; j < A.n; ++j)
                if (W(i, j) > 0.0) CHECK(W(i, j) >= A.eta * A.eta - 1e-12);
    }
}

TEST_CASE("pairwise decomposition of the gram matrix") {
    // A^T A = I - sum_{i<j} w_ij (e_i - e_j)(e_i - e_j)^T, entrywise.
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng pick(seed);
        const int n = static_cast<int>(pick.next_int(2, 10));
        const WeightMatrix A = random_birkhoff_matrix(n, 4, 0.1, seed);
        const GramMatrix W = gram_weights(A);

        std::vector<double> rhs(static_cast<std::size_t>(n) * n, 0.0);
        for (int i = 0; i < n; ++i) rhs[static_cast<std::size_t>(i) * n + i] = 1.0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double w = W(i, j);
                rhs[static_cast<std::size_t>(i) * n + i] -= w;
                rhs[static_cast<std::size_t>(j) * n + j] -= w;
                rhs[static_cast<std::size_t>(i) * n + j] += w;
                rhs[static_cast<std::size_t>(j) * n + i] += w;
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                CHECK(std::abs(W(i, j) - rhs[static_cast<std::size_t>(i) * n + j]) <= 1e-10);
    }
}

TEST_CASE("equal-neighbor weights") {
    SUBCASE("star graph") {
        const auto star = GraphSnapshot::undirected(3, {{0, 1}, {0, 2}});
        const WeightMatrix A = equal_neighbor_matrix(star, 0.25);
        CHECK(A(0, 0) == doctest::Approx(0.5));
        CHECK(A(1, 1) == doctest::Approx(0.75));
        CHECK(A(2, 2) == doctest::Approx(0.75));
        CHECK(A(0, 1) == doctest::Approx(0.25));
        CHECK(A(1, 0) == doctest::Approx(0.25));
        CHECK(A(0, 2) == doctest::Approx(0.25));
        CHECK(A(2, 0) == doctest::Approx(0.25));
        CHECK(A(1, 2) == 0.0);
        CHECK(validate_weight_matrix(A).pass);
    }
    SUBCASE("no neighbors gives the identity") {
        const WeightMatrix A = equal_neighbor_matrix(GraphSnapshot::self_loops_only(3), 0.25);
        for (int i = 0; i < 3; ++i) CHECK(A(i, i) == 1.0);
    }
    SUBCASE("diagonal must stay positive") {
        const auto k3 = GraphSnapshot::complete(3);
        const WeightMatrix A = equal_neighbor_matrix(k3, 0.4);
        CHECK(A(0, 0) == doctest::Approx(0.2));
        CHECK_THROWS_AS(equal_neighbor_matrix(k3, 0.5), std::invalid_argument);
    }
    SUBCASE("directed graphs rejected") {
        CHECK_THROWS_AS(equal_neighbor_matrix(GraphSnapshot(3, {{0, 1}}), 0.1),
                        std::invalid_argument);
    }
}

TEST_CASE("circulant matrix") {
    SUBCASE("rows are cyclic shifts") {
        const WeightMatrix A = circulant_matrix(4, 0.25);
        const double expected[4] = {0.5, 0.25, 0.0, 0.25};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(A(i, j) == doctest::Approx(expected[(j - i + 4) % 4]));
        const WeightMatrix B = circulant_matrix(3, 0.25);
        CHECK(B(0, 0) == doctest::Approx(0.5));
        CHECK(B(0, 1) == doctest::Approx(0.25));
        CHECK(B(0, 2) == doctest::Approx(0.25));
    }
    SUBCASE("passes validation with eta = min(eta, 1 - 2 eta)") {
        for (double eta : {0.1, 0.25, 0.4, 0.45}) {
            const WeightMatrix A = circulant_matrix(7, eta);
            CHECK(A.eta == doctest::Approx(std::min(eta, 1.0 - 2.0 * eta)));
            CHECK(validate_weight_matrix(A).pass);
        }
    }
    SUBCASE("parameter range enforced") {
        CHECK_THROWS_AS(circulant_matrix(2, 0.25), std::invalid_argument);
        CHECK_THROWS_AS(circulant_matrix(5, 0.5), std::invalid_argument);
        CHECK_THROWS_AS(circulant_matrix(5, 0.0), std::invalid_argument);
    }
}

TEST_CASE("circulant second eigenvalue formula") {
    CHECK(circulant_lambda2(4, 0.25) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(circulant_lambda2(10, 0.0) == 1.0);  // zero coupling is the identity

    // Large-n lower bound 1 - 4 eta pi^2 / n^2.
    const double lb = 1.0 - 4.0 * 0.25 * std::numbers::pi * std::numbers::pi / (100.0 * 100.0);
    CHECK(circulant_lambda2(100, 0.25) >= lb);

    SUBCASE("matches a numerical eigensolver") {
        for (int n : {5, 12, 47, 200}) {
            for (double eta : {0.1, 0.25}) {
                const auto eigen = oracle::symmetric_eigenvalues(circulant_matrix(n, eta));
                CHECK(eigen.front() == doctest::Approx(1.0).epsilon(1e-9));
                CHECK(std::abs(eigen[1] - circulant_lambda2(n, eta)) <= 1e-9);
            }
        }
    }
}

TEST_CASE("circulant second eigenvector") {
    SUBCASE("small cases") {
        const auto v4 = circulant_second_eigenvector(4);
        CHECK(v4[0] == doctest::Approx(1.0));
        CHECK(v4[1] == doctest::Approx(0.0));
        CHECK(v4[2] == doctest::Approx(-1.0));
        CHECK(v4[3] == doctest::Approx(0.0));
        const auto v3 = circulant_second_eigenvector(3);
        CHECK(v3[0] == doctest::Approx(1.0));
        CHECK(v3[1] == doctest::Approx(-0.5));
        CHECK(v3[2] == doctest::Approx(-0.5));
    }
    SUBCASE("is an eigenvector and has zero mean") {
        for (int n : {3, 4, 10, 101}) {
            const auto v = circulant_second_eigenvector(n);
            double sum = 0.0;
            for (double value : v) sum += value;
            CHECK(std::abs(sum / n) <= 1e-12);

            const WeightMatrix A = circulant_matrix(n, 0.25);
            const double lambda = circulant_lambda2(n, 0.25);
            const NodeVector av = step(v, A);
            for (int i = 0; i < n; ++i)
                CHECK(std::abs(av[static_cast<std::size_t>(i)] - lambda * v[static_cast<std::size_t>(i)]) <=
                      1e-10);
        }
    }
}

TEST_CASE("random Birkhoff combinations") {
    SUBCASE("single permutation forces the identity") {
        const WeightMatrix A = random_birkhoff_matrix(4, 1, 0.3, 5);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(A(i, j) == (i == j ? 1.0 : 0.0));
    }
    SUBCASE("every output validates") {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            Rng pick(seed);
            const int n = static_cast<int>(pick.next_int(2, 15));
            const int m = static_cast<int>(pick.next_int(2, 5));
            const WeightMatrix A = random_birkhoff_matrix(n, m, 0.1, seed);
            CHECK(validate_weight_matrix(A).pass);
        }
    }
    SUBCASE("deterministic in the seed") {
        const WeightMatrix A = random_birkhoff_matrix(6, 4, 0.05, 123);
        const WeightMatrix B = random_birkhoff_matrix(6, 4, 0.05, 123);
        CHECK(A.a == B.a);
    }
    SUBCASE("infeasible coefficients rejected") {
        CHECK_THROWS_AS(random_birkhoff_matrix(4, 3, 0.4, 1), std::invalid_argument);
    }
}

TEST_SUITE_END();
