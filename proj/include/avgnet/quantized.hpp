#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "avgnet/engine.hpp"
#include "avgnet/graph.hpp"
#include "avgnet/lyapunov.hpp"
#include "avgnet/weights.hpp"

namespace avgnet {

/// Node values stored exactly as integer numerators over a resolution Q:
/// value_i = numerators[i] / Q.
struct QuantizedVector {
    std::vector<std::int64_t> numerators;
    std::int64_t resolution_q = 1;

    int size() const { return static_cast<int>(numerators.size()); }
    double value(int i) const {
        return static_cast<double>(numerators[static_cast<std::size_t>(i)]) /
               static_cast<double>(resolution_q);
    }
    NodeVector to_real() const;
    bool all_equal() const;

    static QuantizedVector floor_of(const NodeVector& x, std::int64_t q);
};

/// Largest integer m with m/Q <= v, except that a value within 1e-9/Q of an
/// exact multiple of 1/Q snaps to that multiple.  The guard keeps floating
/// point representations of exact levels from dropping a full level.
std::int64_t floor_quantize(double v, std::int64_t q);

/// x' = floor(A x) computed componentwise: the real convex combination of
/// the represented values, rounded down to the nearest multiple of 1/Q.
QuantizedVector quantized_step(const QuantizedVector& x, const WeightMatrix& A);

struct QuantizedTrajectoryPoint {
    std::int64_t round = 0;
    double v_under = 0.0;
    double v = 0.0;
    std::int64_t min_numerator = 0;
    std::int64_t max_numerator = 0;
    std::int64_t numerator_sum = 0;  // exact mean accounting: mean = sum / (n * Q)
    double mean = 0.0;
};

struct QuantizedRunReport {
    std::vector<QuantizedTrajectoryPoint> trajectory;
    std::optional<std::int64_t> termination_round;  // first round with all numerators equal
    std::optional<std::int64_t> final_numerator;    // consensus numerator, when terminated
    std::optional<double> mean_drift;               // |x_f - mean(x(0))|, when terminated
    std::int64_t resolution_q = 1;
    std::int64_t k_levels = 0;                      // (max - min numerator) of the initial vector
    std::vector<WindowAudit> assumption_audit;      // v fields carry the min-anchored variance
    QuantizedVector final_values;
    std::int64_t rounds_executed = 0;
};

/// Called once per executed round with the pre-round state, the pre-floor
/// real combination, and the post-floor state.
using QuantizedObserver = std::function<void(std::int64_t round, const QuantizedVector& before,
                                             const NodeVector& prefloor, const QuantizedVector& after)>;

/// Quantized iteration driven by a weight-matrix sequence.  Stops when all
/// numerators are equal (unless stop_on_termination is false, in which case
/// the trajectory continues to max_rounds but the recorded termination round
/// is unchanged) or when max_rounds / the sequence horizon is exhausted.
QuantizedRunReport run_quantized(const QuantizedVector& x0, const TopologySequence& seq,
                                 std::int64_t max_rounds, std::int64_t record_stride = 1,
                                 bool stop_on_termination = true,
                                 const QuantizedObserver& observer = {});

/// Quantized iteration where each round's matrix comes from the balancing
/// protocol applied to the current quantized values over an undirected
/// graph sequence.
QuantizedRunReport run_quantized_balancing(const QuantizedVector& x0, const TopologySequence& seq,
                                           std::int64_t max_rounds, std::int64_t record_stride = 1,
                                           bool stop_on_termination = true,
                                           const QuantizedObserver& observer = {});

/// (c/Q) * (n^2/eta) * B * log(Q * n * (U - L)): worst-case gap between the
/// quantized consensus value and the initial average.
double quantization_error_bound(int n, double eta, std::int64_t b, std::int64_t q, double u,
                                double l, double c);

/// n * B * K rounds always suffice for all values to become equal.
std::int64_t equalization_bound(int n, std::int64_t b, std::int64_t k_levels);

/// Adversarial schedule on which the quantized consensus lands exactly 1/2
/// away from the true average: half the nodes start at 0, half at 1, and
/// each phase averages a complete subgraph of all current zeros plus one
/// current one, collapsing that node to zero.
struct ConverseScenario {
    int n = 0;
    std::int64_t resolution_q = 1;
    QuantizedVector x0;
    std::vector<GraphSnapshot> rounds;
    std::vector<WeightMatrix> matrices;

    TopologySequence as_sequence() const;  // horizon n/2
};

/// Requires n even and Q < n/2.
ConverseScenario converse_scenario(int n, std::int64_t q);

}  // namespace avgnet
