#include "avgnet/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace avgnet {

double mean(const NodeVector& x) {
    if (x.empty()) throw std::invalid_argument("mean: empty vector");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

CutPartition CutPartition::from_minus(int n, std::vector<int> minus_members) {
    std::sort(minus_members.begin(), minus_members.end());
    minus_members.erase(std::unique(minus_members.begin(), minus_members.end()), minus_members.end());
    if (minus_members.empty() || static_cast<int>(minus_members.size()) >= n)
        throw std::invalid_argument("CutPartition: both sides must be nonempty");
    CutPartition cut;
    cut.s_minus = std::move(minus_members);
    std::size_t at = 0;
    for (int i = 0; i < n; ++i) {
        if (at < cut.s_minus.size() && cut.s_minus[at] == i) {
            ++at;
            continue;
        }
        if (i < 0 || i >= n) throw std::invalid_argument("CutPartition: index out of range");
        cut.s_plus.push_back(i);
    }
    for (int v : cut.s_minus)
        if (v < 0 || v >= n) throw std::invalid_argument("CutPartition: index out of range");
    return cut;
}

CutPartition CutPartition::from_mask(int n, unsigned mask) {
    std::vector<int> minus;
    for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) minus.push_back(i);
    return from_minus(n, std::move(minus));
}

// Two-pass form: mean first, then squared deviations.
static double anchored_sum(const NodeVector& x, double anchor) {
    double s = 0.0;
    for (double v : x) {
        const double d = v - anchor;
        s += d * d;
    }
    return s;
}

double sample_variance(const NodeVector& x) { return anchored_sum(x, mean(x)); }

double min_anchored_variance(const NodeVector& x) {
    if (x.empty()) throw std::invalid_argument("min_anchored_variance: empty vector");
    return anchored_sum(x, *std::min_element(x.begin(), x.end()));
}

DecreaseRecord variance_decrease(const NodeVector& x, const WeightMatrix& A) {
    if (static_cast<int>(x.size()) != A.n)
        throw std::invalid_argument("variance_decrease: dimension mismatch");
    const ValidationReport report = validate_weight_matrix(A);
    if (!report.pass) {
        std::string msg = "variance_decrease: matrix fails validation:";
        for (const auto& v : report.violations) msg += " " + v + ";";
        throw std::invalid_argument(msg);
    }

    NodeVector ax(x.size(), 0.0);
    for (int i = 0; i < A.n; ++i) {
        double s = 0.0;
        for (int j = 0; j < A.n; ++j) s += A(i, j) * x[static_cast<std::size_t>(j)];
        ax[static_cast<std::size_t>(i)] = s;
    }

    DecreaseRecord rec;
    rec.lhs = sample_variance(x) - sample_variance(ax);

    const GramMatrix W = gram_weights(A);
    double rhs = 0.0;
    for (int i = 0; i < A.n; ++i) {
        for (int j = i + 1; j < A.n; ++j) {
            const double d = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(j)];
            rhs += W(i, j) * d * d;
        }
    }
    rec.rhs = rhs;
    rec.residual = std::abs(rec.lhs - rec.rhs);
    return rec;
}

double cut_weight_sum(const GramMatrix& W, const CutPartition& cut) {
    double s = 0.0;
    for (int i : cut.s_minus)
        for (int j : cut.s_plus) s += W(i, j);
    return s;
}

double sorted_gap_energy(const NodeVector& x) {
    NodeVector sorted = x;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        const double d = sorted[i] - sorted[i + 1];
        s += d * d;
    }
    return s;
}

bool constant_difference_check(const NodeVector& u, const NodeVector& w,
                               const std::vector<double>& z_samples) {
    if (u.size() != w.size())
        throw std::invalid_argument("constant_difference_check: vectors must have equal length");
    double su = 0.0, sw = 0.0;
    for (double v : u) su += v;
    for (double v : w) sw += v;
    if (std::abs(su - sw) > 1e-9)
        throw std::invalid_argument("constant_difference_check: sums differ beyond 1e-9");
    if (z_samples.empty()) return true;

    auto f = [&](double z) { return anchored_sum(u, z) - anchored_sum(w, z); };
    const double first = f(z_samples.front());
    const double tol = 1e-9 * std::max(1.0, std::abs(first));
    for (double z : z_samples)
        if (std::abs(f(z) - first) > tol) return false;
    return true;
}

}  // namespace avgnet
