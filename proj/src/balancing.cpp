#include "avgnet/balancing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "run_internal.hpp"

namespace avgnet {

namespace {

constexpr double kThird = 1.0 / 3.0;

/// Realized communication graph of a round: the exchange pairs plus self-edges.
GraphSnapshot realized_graph(int n, const std::vector<Exchange>& exchanges) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(exchanges.size());
    for (const Exchange& e : exchanges) pairs.emplace_back(e.offerer, e.acceptor);
    return GraphSnapshot::undirected(n, pairs);
}

}  // namespace

RoundOutcome balancing_round(const NodeVector& x, const GraphSnapshot& g) {
    const int n = g.n;
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("balancing_round: value vector size mismatch");
    if (!g.is_undirected())
        throw std::invalid_argument("balancing_round: graph must be undirected");

    // Phase 2: each node picks the smallest strictly smaller neighbor value
    // (ties to the lowest index) and offers a third of the gap.
    std::vector<int> offer_target(static_cast<std::size_t>(n), -1);
    std::vector<double> offer_amount(static_cast<std::size_t>(n), 0.0);
    for (int c = 0; c < n; ++c) {
        int target = -1;
        for (int d : g.neighbors(c)) {
            if (x[static_cast<std::size_t>(d)] < x[static_cast<std::size_t>(c)] &&
                (target == -1 || x[static_cast<std::size_t>(d)] < x[static_cast<std::size_t>(target)] ||
                 (x[static_cast<std::size_t>(d)] == x[static_cast<std::size_t>(target)] && d < target)))
                target = d;
        }
        if (target != -1) {
            offer_target[static_cast<std::size_t>(c)] = target;
            offer_amount[static_cast<std::size_t>(c)] =
                (x[static_cast<std::size_t>(c)] - x[static_cast<std::size_t>(target)]) * kThird;
        }
    }

    // Phase 3: each node accepts only its largest incoming offer (ties to
    // the lowest offerer index).
    std::vector<int> accepted_from(static_cast<std::size_t>(n), -1);
    for (int c = 0; c < n; ++c) {
        const int d = offer_target[static_cast<std::size_t>(c)];
        if (d == -1) continue;
        const int cur = accepted_from[static_cast<std::size_t>(d)];
        if (cur == -1 || offer_amount[static_cast<std::size_t>(c)] > offer_amount[static_cast<std::size_t>(cur)] ||
            (offer_amount[static_cast<std::size_t>(c)] == offer_amount[static_cast<std::size_t>(cur)] && c < cur))
            accepted_from[static_cast<std::size_t>(d)] = c;
    }

    // Phase 4: settle.
    RoundOutcome outcome;
    outcome.new_values = x;
    outcome.implied_matrix = WeightMatrix::identity(n, kThird);
    for (int d = 0; d < n; ++d) {
        const int c = accepted_from[static_cast<std::size_t>(d)];
        if (c == -1) continue;
        const double delta = offer_amount[static_cast<std::size_t>(c)];
        outcome.new_values[static_cast<std::size_t>(d)] += delta;
        outcome.new_values[static_cast<std::size_t>(c)] -= delta;
        outcome.accepted_exchanges.push_back({c, d, delta});

        WeightMatrix& A = outcome.implied_matrix;
        A(c, c) -= kThird;
        A(c, d) += kThird;
        A(d, d) -= kThird;
        A(d, c) += kThird;
    }
    return outcome;
}

RunReport run_balancing(const NodeVector& x0, const TopologySequence& seq, double epsilon,
                        std::int64_t max_rounds, std::int64_t record_stride,
                        const BalancingObserver& observer) {
    if (x0.empty()) throw std::invalid_argument("run_balancing: empty initial vector");
    for (double v : x0)
        if (!std::isfinite(v)) throw std::invalid_argument("run_balancing: initial values must be finite");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("run_balancing: epsilon must lie in (0, 1)");
    if (record_stride < 1) throw std::invalid_argument("run_balancing: record_stride must be >= 1");

    RunReport report;
    NodeVector x = x0;
    double v = sample_variance(x);
    const double v0 = v;
    report.trajectory.push_back({0, v, min_anchored_variance(x),
                                 *std::min_element(x.begin(), x.end()),
                                 *std::max_element(x.begin(), x.end()), mean(x)});

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
        const GraphSnapshot g = seq.snapshot_at(k);
        RoundOutcome outcome = balancing_round(x, g);
        if (observer) observer(k, outcome);

        const bool weights_ok = validate_weight_matrix(outcome.implied_matrix).pass;
        x = std::move(outcome.new_values);
        report.rounds_executed = k + 1;
        v = sample_variance(x);

        if ((k + 1) % record_stride == 0) {
            report.trajectory.push_back({k + 1, v, min_anchored_variance(x),
                                         *std::min_element(x.begin(), x.end()),
                                         *std::max_element(x.begin(), x.end()), mean(x)});
            last_recorded = k + 1;
        }

        window.note_round(g, realized_graph(g.n, outcome.accepted_exchanges), weights_ok);
        if (window.window_complete()) {
            report.assumption_audit.push_back(window.finish(v));
            window.begin(x, v);
        }

        const bool done = v <= epsilon * v0;
        if (done) report.convergence_time = k + 1;
        if ((done || k + 1 == max_rounds) && last_recorded != k + 1) {
            report.trajectory.push_back({k + 1, v, min_anchored_variance(x),
                                         *std::min_element(x.begin(), x.end()),
                                         *std::max_element(x.begin(), x.end()), mean(x)});
            last_recorded = k + 1;
        }
        if (done) break;
    }

    report.final_values = x;
    return report;
}

}  // namespace avgnet
