#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace avgnet {

struct GraphSnapshot;

/// Absolute tolerance on row/column sums and entry comparisons.
inline constexpr double kStochasticTol = 1e-12;

/// Dense nonnegative weight matrix with stochasticity metadata.
/// entries are row-major; a(i,j) is the weight node i puts on node j's value.
/// eta is the declared lower bound on every strictly positive entry.
struct WeightMatrix {
    int n = 0;
    double eta = 0.0;
    std::vector<double> a;

    WeightMatrix() = default;
    WeightMatrix(int n_, double eta_) : n(n_), eta(eta_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}

    static WeightMatrix identity(int n, double eta = 1.0);

    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
};

/// Symmetric matrix of pairwise weights w_ij = (A^T A)_ij.
struct GramMatrix {
    int n = 0;
    std::vector<double> w;

    GramMatrix() = default;
    explicit GramMatrix(int n_) : n(n_), w(static_cast<std::size_t>(n_) * n_, 0.0) {}

    double operator()(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
    double& operator()(int i, int j) { return w[static_cast<std::size_t>(i) * n + j]; }
};

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> violations;
};

/// Checks that A is doubly stochastic with positive diagonal and that every
/// strictly positive entry is at least A.eta (all within kStochasticTol).
/// The report lists every violated condition with the offending indices.
ValidationReport validate_weight_matrix(const WeightMatrix& A);

/// W = A^T A.
GramMatrix gram_weights(const WeightMatrix& A);

/// Uniform-weight matrix on an undirected graph: a_ij = eps for each
/// neighbor j of i, a_ii = 1 - eps * deg(i).  Rejects eps * deg(i) >= 1
/// (the diagonal must stay strictly positive) and directed-only graphs.
WeightMatrix equal_neighbor_matrix(const GraphSnapshot& g, double eps);

/// Symmetric circulant (1 - 2*eta) I + eta P + eta P^-1 with P the cyclic
/// shift; requires n >= 3 and 0 < eta < 1/2.
WeightMatrix circulant_matrix(int n, double eta);

/// Second largest eigenvalue of circulant_matrix(n, eta):
/// 1 - 2*eta + 2*eta*cos(2*pi/n).
double circulant_lambda2(int n, double eta);

/// Eigenvector for that eigenvalue: v_i = cos(2*pi*i/n), i = 0..n-1.
std::vector<double> circulant_second_eigenvector(int n);

/// Random convex combination of the identity plus num_permutations-1 random
/// permutation matrices, every coefficient >= eta.  Doubly stochastic by
/// construction and deterministic in the seed.
WeightMatrix random_birkhoff_matrix(int n, int num_permutations, double eta,
                                    std::uint64_t seed);

}  // namespace avgnet
