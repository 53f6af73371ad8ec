#include "avgnet/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "avgnet/graph.hpp"
#include "avgnet/rng.hpp"

namespace avgnet {

WeightMatrix WeightMatrix::identity(int n, double eta) {
    WeightMatrix A(n, eta);
    for (int i = 0; i < n; ++i) A(i, i) = 1.0;
    return A;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

ValidationReport validate_weight_matrix(const WeightMatrix& A) {
    ValidationReport report;
    auto fail = [&](std::string msg) {
        report.pass = false;
        report.violations.push_back(std::move(msg));
    };

    if (A.n <= 0 || A.a.size() != static_cast<std::size_t>(A.n) * A.n) {
        fail("matrix is not square with a positive dimension");
        return report;
    }
    if (!(A.eta > 0.0)) fail("eta must be strictly positive, got " + fmt(A.eta));

    for (int i = 0; i < A.n; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < A.n; ++j) {
            const double v = A(i, j);
            if (v < 0.0) fail("negative entry at (" + std::to_string(i) + "," + std::to_string(j) + "): " + fmt(v));
            if (v > 0.0 && v < A.eta - kStochasticTol)
                fail("positive entry below eta at (" + std::to_string(i) + "," + std::to_string(j) + "): " + fmt(v));
            row_sum += v;
        }
        if (std::abs(row_sum - 1.0) > kStochasticTol)
            fail("row " + std::to_string(i) + " sums to " + fmt(row_sum));
        if (!(A(i, i) > 0.0)) fail("diagonal entry " + std::to_string(i) + " is not strictly positive");
    }
    for (int j = 0; j < A.n; ++j) {
        double col_sum = 0.0;
        for (int i = 0; i < A.n; ++i) col_sum += A(i, j);
        if (std::abs(col_sum - 1.0) > kStochasticTol)
            fail("column " + std::to_string(j) + " sums to " + fmt(col_sum));
    }
    return report;
}

GramMatrix gram_weights(const WeightMatrix& A) {
    GramMatrix W(A.n);
    for (int i = 0; i < A.n; ++i) {
        for (int j = i; j < A.n; ++j) {
            double s = 0.0;
            for (int k = 0; k < A.n; ++k) s += A(k, i) * A(k, j);
            W(i, j) = s;
            W(j, i) = s;
        }
    }
    return W;
}

WeightMatrix equal_neighbor_matrix(const GraphSnapshot& g, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("equal_neighbor_matrix: eps must be positive");
    if (!g.is_undirected()) throw std::invalid_argument("equal_neighbor_matrix: graph must be undirected");

    double min_diag = 1.0;
    for (int i = 0; i < g.n; ++i) {
        const double diag = 1.0 - eps * g.degree(i);
        if (!(diag > 0.0))
            throw std::invalid_argument("equal_neighbor_matrix: eps * deg(" + std::to_string(i) +
                                        ") >= 1 would zero the diagonal");
        min_diag = std::min(min_diag, diag);
    }

    WeightMatrix A(g.n, std::min(eps, min_diag));
    for (int i = 0; i < g.n; ++i) {
        for (int j : g.neighbors(i)) A(i, j) = eps;
        A(i, i) = 1.0 - eps * g.degree(i);
    }
    return A;
}

WeightMatrix circulant_matrix(int n, double eta) {
    if (n < 3) throw std::invalid_argument("circulant_matrix: n must be >= 3");
    if (!(eta > 0.0 && eta < 0.5))
        throw std::invalid_argument("circulant_matrix: eta must lie in (0, 1/2)");
    WeightMatrix A(n, std::min(eta, 1.0 - 2.0 * eta));
    for (int i = 0; i < n; ++i) {
        A(i, i) = 1.0 - 2.0 * eta;
        A(i, (i + 1) % n) = eta;
        A(i, (i + n - 1) % n) = eta;
    }
    return A;
}

double circulant_lambda2(int n, double eta) {
    return 1.0 - 2.0 * eta + 2.0 * eta * std::cos(2.0 * std::numbers::pi / n);
}

std::vector<double> circulant_second_eigenvector(int n) {
    if (n < 3) throw std::invalid_argument("circulant_second_eigenvector: n must be >= 3");
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i)] = std::cos(2.0 * std::numbers::pi * i / n);
    return v;
}

WeightMatrix random_birkhoff_matrix(int n, int num_permutations, double eta, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("random_birkhoff_matrix: n must be >= 1");
    if (num_permutations < 1)
        throw std::invalid_argument("random_birkhoff_matrix: need at least one permutation");
    if (num_permutations == 1) return WeightMatrix::identity(n, 1.0);
    if (!(eta > 0.0) || eta * num_permutations > 1.0)
        throw std::invalid_argument("random_birkhoff_matrix: infeasible coefficients, need 0 < eta and eta * count <= 1");

    Rng rng(derive_seed(seed, 0x6269726b /* "birk" */));
    const int m = num_permutations;

    // Symmetric Dirichlet via normalized exponentials, then affinely mapped
    // so every coefficient is at least eta and the total is exactly one.
    std::vector<double> coeff(static_cast<std::size_t>(m));
    double total = 0.0;
    for (double& c : coeff) {
        c = -std::log(1.0 - rng.next_unit());
        total += c;
    }
    const double slack = 1.0 - eta * m;
    for (double& c : coeff) c = eta + slack * (c / total);
    double tail = 0.0;
    for (int t = 1; t < m; ++t) tail += coeff[static_cast<std::size_t>(t)];
    coeff[0] = 1.0 - tail;

    WeightMatrix A(n, eta);
    for (int i = 0; i < n; ++i) A(i, i) += coeff[0];  // identity permutation keeps the diagonal positive

    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int t = 1; t < m; ++t) {
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        for (int i = n - 1; i > 0; --i) {
            const auto j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
            std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        }
        for (int i = 0; i < n; ++i) A(i, perm[static_cast<std::size_t>(i)]) += coeff[static_cast<std::size_t>(t)];
    }
    return A;
}

}  // namespace avgnet
