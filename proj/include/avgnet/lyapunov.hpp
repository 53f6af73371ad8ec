#pragma once

#include <vector>

#include "avgnet/weights.hpp"

namespace avgnet {

/// One real value per node.
using NodeVector = std::vector<double>;

double mean(const NodeVector& x);

/// Partition of the node set into two disjoint nonempty halves.
struct CutPartition {
    std::vector<int> s_minus;
    std::vector<int> s_plus;

    /// Builds the partition (minus_members, complement) and validates it.
    static CutPartition from_minus(int n, std::vector<int> minus_members);
    /// All nodes whose bit is set in `mask` go to s_minus; 0 < mask < 2^n - 1.
    static CutPartition from_mask(int n, unsigned mask);
};

/// V(x) = sum_i (x_i - mean(x))^2.
double sample_variance(const NodeVector& x);

/// V_under(x) = sum_i (x_i - min(x))^2.
double min_anchored_variance(const NodeVector& x);

/// Both sides of the one-step variance decrease identity, computed
/// independently: lhs = V(x) - V(Ax), rhs = sum_{i<j} w_ij (x_i - x_j)^2
/// with w the pairwise weights of A^T A.
struct DecreaseRecord {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;
};

/// Rejects matrices that fail validate_weight_matrix.
DecreaseRecord variance_decrease(const NodeVector& x, const WeightMatrix& A);

/// sum of w_ij over i in s_minus, j in s_plus.
double cut_weight_sum(const GramMatrix& W, const CutPartition& cut);

/// Sort x nonincreasing and return sum of squared adjacent gaps.
double sorted_gap_energy(const NodeVector& x);

/// True iff f(z) = sum (u_i - z)^2 - sum (w_i - z)^2 takes the same value
/// at every z sample (within 1e-9 of the first sample, scaled).  Requires
/// sum(u) == sum(w) within 1e-9, the condition under which f is constant.
bool constant_difference_check(const NodeVector& u, const NodeVector& w,
                               const std::vector<double>& z_samples);

}  // namespace avgnet
