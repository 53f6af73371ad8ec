#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "avgnet/graph.hpp"
#include "avgnet/lyapunov.hpp"
#include "avgnet/weights.hpp"

namespace avgnet {

struct TrajectoryPoint {
    std::int64_t round = 0;
    double v = 0.0;        // sample variance
    double v_under = 0.0;  // min-anchored variance
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
};

/// Per-window audit of the connectivity and weight assumptions, together
/// with the Lyapunov values needed to verify the per-window decrease bounds.
struct WindowAudit {
    std::int64_t window = 0;
    bool union_connected = false;     // union of the window's rounds strongly connected
    bool cut_crossing_ok = false;     // cut-crossing condition for the start-of-window values
    bool weights_ok = true;           // every round's matrix passed validate_weight_matrix
    double v_start = 0.0;             // Lyapunov value at the window start
    double v_end = 0.0;               // ... and at the window end
    double gap_energy_start = 0.0;    // sorted_gap_energy at the window start
};

struct RunReport {
    std::vector<TrajectoryPoint> trajectory;
    std::optional<std::int64_t> convergence_time;  // first k with V(k) <= eps * V(0)
    NodeVector final_values;
    std::vector<WindowAudit> assumption_audit;
    std::int64_t rounds_executed = 0;
    bool all_windows_ok() const;
};

/// One synchronous update x' = A x.  The caller is responsible for handing
/// in a validated matrix; only the dimensions are checked here.
NodeVector step(const NodeVector& x, const WeightMatrix& A);

/// Iterates x(k+1) = A(k) x(k) until V(k) <= epsilon * V(0) or max_rounds,
/// recording the trajectory every record_stride rounds (round 0 and the
/// final round are always recorded) and auditing every completed window.
/// Assumption violations are recorded in the audit, never fatal.
/// A sequence horizon clamps max_rounds.  V(0) = 0 converges at round 0.
RunReport run(const NodeVector& x0, const TopologySequence& seq, double epsilon,
              std::int64_t max_rounds, std::int64_t record_stride = 1);

/// c * (n^2 / eta) * B * log(1/epsilon), the worst-case convergence time
/// scale with a caller-supplied constant.
double convergence_time_bound(int n, std::int64_t b, double eta, double epsilon, double c);

}  // namespace avgnet
