#include "avgnet/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "run_internal.hpp"

namespace avgnet {

bool RunReport::all_windows_ok() const {
    for (const WindowAudit& a : assumption_audit)
        if (!a.union_connected || !a.cut_crossing_ok || !a.weights_ok) return false;
    return true;
}

NodeVector step(const NodeVector& x, const WeightMatrix& A) {
    if (static_cast<int>(x.size()) != A.n)
        throw std::invalid_argument("step: dimension mismatch");
    NodeVector out(x.size(), 0.0);
    for (int i = 0; i < A.n; ++i) {
        double s = 0.0;
        for (int j = 0; j < A.n; ++j) s += A(i, j) * x[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = s;
    }
    return out;
}

namespace {

TrajectoryPoint observe(std::int64_t round, const NodeVector& x) {
    TrajectoryPoint p;
    p.round = round;
    p.v = sample_variance(x);
    p.v_under = min_anchored_variance(x);
    const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
    p.min = *lo;
    p.max = *hi;
    p.mean = mean(x);
    return p;
}

}  // namespace

RunReport run(const NodeVector& x0, const TopologySequence& seq, double epsilon,
              std::int64_t max_rounds, std::int64_t record_stride) {
    if (x0.empty()) throw std::invalid_argument("run: empty initial vector");
    for (double v : x0)
        if (!std::isfinite(v)) throw std::invalid_argument("run: initial values must be finite");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("run: epsilon must lie in (0, 1)");
    if (max_rounds < 0) throw std::invalid_argument("run: max_rounds must be nonnegative");
    if (record_stride < 1) throw std::invalid_argument("run: record_stride must be >= 1");
    if (!seq.has_matrices()) throw std::invalid_argument("run: sequence carries no weight matrices");

    RunReport report;
    NodeVector x = x0;
    TrajectoryPoint start = observe(0, x);
    const double v0 = start.v;
    report.trajectory.push_back(start);

    if (v0 == 0.0) {
        report.convergence_time = 0;
        report.final_values = x;
        return report;
    }

    max_rounds = detail::clamp_to_horizon(max_rounds, seq);
    detail::WindowCollector window(seq.window_length());
    window.begin(x, v0);

    std::int64_t last_recorded = 0;
    for (std::int64_t k = 0; k < max_rounds; ++k) {
        const WeightMatrix A = seq.matrix_at(k);
        const bool weights_ok = validate_weight_matrix(A).pass;
        x = step(x, A);
        report.rounds_executed = k + 1;

        const TrajectoryPoint p = observe(k + 1, x);
        if ((k + 1) % record_stride == 0) {
            report.trajectory.push_back(p);
            last_recorded = k + 1;
        }

        GraphSnapshot support = support_graph(A);
        GraphSnapshot support_copy = support;
        window.note_round(std::move(support), std::move(support_copy), weights_ok);
        if (window.window_complete()) {
            report.assumption_audit.push_back(window.finish(p.v));
            window.begin(x, p.v);
        }

        if (p.v <= epsilon * v0) {
            report.convergence_time = k + 1;
            if (last_recorded != k + 1) report.trajectory.push_back(p);
            break;
        }
        if (k + 1 == max_rounds && last_recorded != k + 1) report.trajectory.push_back(p);
    }

    report.final_values = x;
    return report;
}

double convergence_time_bound(int n, std::int64_t b, double eta, double epsilon, double c) {
    if (n < 1 || b < 1 || !(eta > 0.0) || !(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("convergence_time_bound: parameters out of range");
    return c * (static_cast<double>(n) * n / eta) * static_cast<double>(b) * std::log(1.0 / epsilon);
}

}  // namespace avgnet
