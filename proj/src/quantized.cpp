#include "avgnet/quantized.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "avgnet/balancing.hpp"
#include "run_internal.hpp"

namespace avgnet {

NodeVector QuantizedVector::to_real() const {
    NodeVector x(numerators.size());
    for (std::size_t i = 0; i < numerators.size(); ++i)
        x[i] = static_cast<double>(numerators[i]) / static_cast<double>(resolution_q);
    return x;
}

bool QuantizedVector::all_equal() const {
    return std::all_of(numerators.begin(), numerators.end(),
                       [&](std::int64_t v) { return v == numerators.front(); });
}

QuantizedVector QuantizedVector::floor_of(const NodeVector& x, std::int64_t q) {
    QuantizedVector out;
    out.resolution_q = q;
    out.numerators.reserve(x.size());
    for (double v : x) out.numerators.push_back(floor_quantize(v, q));
    return out;
}

std::int64_t floor_quantize(double v, std::int64_t q) {
    if (!std::isfinite(v)) throw std::invalid_argument("floor_quantize: value must be finite");
    if (q < 1) throw std::invalid_argument("floor_quantize: resolution must be >= 1");
    const double scaled = v * static_cast<double>(q);
    const double nearest = std::round(scaled);
    if (std::abs(scaled - nearest) <= 1e-9) return static_cast<std::int64_t>(nearest);
    return static_cast<std::int64_t>(std::floor(scaled));
}

QuantizedVector quantized_step(const QuantizedVector& x, const WeightMatrix& A) {
    if (x.size() != A.n) throw std::invalid_argument("quantized_step: dimension mismatch");
    const NodeVector combined = step(x.to_real(), A);
    return QuantizedVector::floor_of(combined, x.resolution_q);
}

namespace {

QuantizedTrajectoryPoint observe(std::int64_t round, const QuantizedVector& x) {
    QuantizedTrajectoryPoint p;
    p.round = round;
    const NodeVector real = x.to_real();
    p.v_under = min_anchored_variance(real);
    p.v = sample_variance(real);
    const auto [lo, hi] = std::minmax_element(x.numerators.begin(), x.numerators.end());
    p.min_numerator = *lo;
    p.max_numerator = *hi;
    p.numerator_sum = 0;
    for (std::int64_t v : x.numerators) p.numerator_sum += v;
    p.mean = static_cast<double>(p.numerator_sum) /
             (static_cast<double>(x.size()) * static_cast<double>(x.resolution_q));
    return p;
}

/// Shared driver; balancing_mode derives each round's matrix from the
/// current values via the offer/accept protocol.
QuantizedRunReport run_impl(const QuantizedVector& x0, const TopologySequence& seq,
                            std::int64_t max_rounds, std::int64_t record_stride,
                            bool stop_on_termination, const QuantizedObserver& observer,
                            bool balancing_mode) {
    if (x0.numerators.empty()) throw std::invalid_argument("run_quantized: empty initial vector");
    if (x0.resolution_q < 1) throw std::invalid_argument("run_quantized: resolution must be >= 1");
    if (record_stride < 1) throw std::invalid_argument("run_quantized: record_stride must be >= 1");

    QuantizedRunReport report;
    report.resolution_q = x0.resolution_q;

    QuantizedVector x = x0;
    QuantizedTrajectoryPoint p = observe(0, x);
    report.k_levels = p.max_numerator - p.min_numerator;
    report.trajectory.push_back(p);
    const double initial_mean = p.mean;

    if (x.all_equal()) report.termination_round = 0;

    max_rounds = detail::clamp_to_horizon(max_rounds, seq);
    detail::WindowCollector window(seq.window_length());
    window.begin(x.to_real(), p.v_under);

    std::int64_t last_recorded = 0;
    if (!(report.termination_round && stop_on_termination)) {
        for (std::int64_t k = 0; k < max_rounds; ++k) {
            WeightMatrix A;
            GraphSnapshot union_g, cut_g;
            if (balancing_mode) {
                const GraphSnapshot g = seq.snapshot_at(k);
                RoundOutcome outcome = balancing_round(x.to_real(), g);
                A = std::move(outcome.implied_matrix);
                union_g = g;
                std::vector<std::pair<int, int>> pairs;
                for (const Exchange& e : outcome.accepted_exchanges)
                    pairs.emplace_back(e.offerer, e.acceptor);
                cut_g = GraphSnapshot::undirected(g.n, pairs);
            } else {
                A = seq.matrix_at(k);
                union_g = support_graph(A);
                cut_g = union_g;
            }

            const bool weights_ok = validate_weight_matrix(A).pass;
            const NodeVector prefloor = step(x.to_real(), A);
            QuantizedVector next = QuantizedVector::floor_of(prefloor, x.resolution_q);
            if (observer) observer(k, x, prefloor, next);
            x = std::move(next);
            report.rounds_executed = k + 1;

            p = observe(k + 1, x);
            if ((k + 1) % record_stride == 0) {
                report.trajectory.push_back(p);
                last_recorded = k + 1;
            }

            window.note_round(std::move(union_g), std::move(cut_g), weights_ok);
            if (window.window_complete()) {
                report.assumption_audit.push_back(window.finish(p.v_under));
                window.begin(x.to_real(), p.v_under);
            }

            const bool terminated_now = !report.termination_round && x.all_equal();
            if (terminated_now) report.termination_round = k + 1;
            const bool stopping = (terminated_now && stop_on_termination) || k + 1 == max_rounds;
            if (stopping && last_recorded != k + 1) {
                report.trajectory.push_back(p);
                last_recorded = k + 1;
            }
            if (terminated_now && stop_on_termination) break;
        }
    }

    if (report.termination_round) {
        report.final_numerator = x.numerators.front();
        const double x_f = static_cast<double>(*report.final_numerator) /
                           static_cast<double>(x.resolution_q);
        report.mean_drift = std::abs(x_f - initial_mean);
    }
    report.final_values = std::move(x);
    return report;
}

}  // namespace

QuantizedRunReport run_quantized(const QuantizedVector& x0, const TopologySequence& seq,
                                 std::int64_t max_rounds, std::int64_t record_stride,
                                 bool stop_on_termination, const QuantizedObserver& observer) {
    return run_impl(x0, seq, max_rounds, record_stride, stop_on_termination, observer, false);
}

QuantizedRunReport run_quantized_balancing(const QuantizedVector& x0, const TopologySequence& seq,
                                           std::int64_t max_rounds, std::int64_t record_stride,
                                           bool stop_on_termination,
                                           const QuantizedObserver& observer) {
    return run_impl(x0, seq, max_rounds, record_stride, stop_on_termination, observer, true);
}

double quantization_error_bound(int n, double eta, std::int64_t b, std::int64_t q, double u,
                                double l, double c) {
    if (n < 1 || b < 1 || q < 1 || !(eta > 0.0) || !(u > l))
        throw std::invalid_argument("quantization_error_bound: parameters out of range");
    return (c / static_cast<double>(q)) * (static_cast<double>(n) * n / eta) *
           static_cast<double>(b) *
           std::log(static_cast<double>(q) * static_cast<double>(n) * (u - l));
}

std::int64_t equalization_bound(int n, std::int64_t b, std::int64_t k_levels) {
    if (n < 1 || b < 1 || k_levels < 0)
        throw std::invalid_argument("equalization_bound: parameters out of range");
    return static_cast<std::int64_t>(n) * b * k_levels;
}

TopologySequence ConverseScenario::as_sequence() const {
    return TopologySequence::from_matrices(
        [list = matrices](std::int64_t k) { return list[static_cast<std::size_t>(k)]; }, 1,
        static_cast<std::int64_t>(matrices.size()));
}

ConverseScenario converse_scenario(int n, std::int64_t q) {
    if (n < 4 || n % 2 != 0) throw std::invalid_argument("converse_scenario: n must be even and >= 4");
    if (q < 1 || !(q < n / 2)) throw std::invalid_argument("converse_scenario: requires 1 <= Q < n/2");

    ConverseScenario sc;
    sc.n = n;
    sc.resolution_q = q;
    sc.x0.resolution_q = q;
    sc.x0.numerators.assign(static_cast<std::size_t>(n), 0);
    for (int i = n / 2; i < n; ++i) sc.x0.numerators[static_cast<std::size_t>(i)] = q;

    std::vector<char> is_zero(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n / 2; ++i) is_zero[static_cast<std::size_t>(i)] = 1;

    for (int phase = 0; phase < n / 2; ++phase) {
        // Complete subgraph over every current zero plus the lowest-index one.
        std::vector<int> members;
        for (int i = 0; i < n; ++i)
            if (is_zero[static_cast<std::size_t>(i)]) members.push_back(i);
        int one_node = -1;
        for (int i = 0; i < n; ++i)
            if (!is_zero[static_cast<std::size_t>(i)]) {
                one_node = i;
                break;
            }
        members.push_back(one_node);

        std::vector<std::pair<int, int>> pairs;
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b)
                pairs.emplace_back(members[a], members[b]);
        GraphSnapshot g = GraphSnapshot::undirected(n, pairs);
        sc.matrices.push_back(equal_neighbor_matrix(g, 1.0 / static_cast<double>(members.size())));
        sc.rounds.push_back(std::move(g));

        is_zero[static_cast<std::size_t>(one_node)] = 1;
    }
    return sc;
}

}  // namespace avgnet
