#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "avgnet/engine.hpp"
#include "avgnet/graph.hpp"
#include "avgnet/lyapunov.hpp"

namespace avgnet::detail {

/// Accumulates one window's worth of rounds and emits the WindowAudit.
/// union_rounds feed the connectivity check (the exogenous topology);
/// cut_rounds feed the cut-crossing check (the realized edge sets, which
/// differ from the exogenous ones for data-dependent protocols).
class WindowCollector {
public:
    explicit WindowCollector(std::int64_t b) : b_(b) {}

    void begin(const NodeVector& x_start, double lyapunov_start) {
        x_start_ = x_start;
        v_start_ = lyapunov_start;
        gap_start_ = sorted_gap_energy(x_start);
        weights_ok_ = true;
        union_rounds_.clear();
        cut_rounds_.clear();
    }

    void note_round(GraphSnapshot union_g, GraphSnapshot cut_g, bool round_weights_ok) {
        union_rounds_.push_back(std::move(union_g));
        cut_rounds_.push_back(std::move(cut_g));
        weights_ok_ = weights_ok_ && round_weights_ok;
    }

    bool window_complete() const { return static_cast<std::int64_t>(union_rounds_.size()) == b_; }

    WindowAudit finish(double lyapunov_end) {
        WindowAudit audit;
        audit.window = window_++;
        audit.union_connected = is_strongly_connected(union_graph(union_rounds_));
        audit.cut_crossing_ok = check_cut_crossing(cut_rounds_, x_start_);
        audit.weights_ok = weights_ok_;
        audit.v_start = v_start_;
        audit.v_end = lyapunov_end;
        audit.gap_energy_start = gap_start_;
        return audit;
    }

private:
    std::int64_t b_;
    std::int64_t window_ = 0;
    NodeVector x_start_;
    double v_start_ = 0.0;
    double gap_start_ = 0.0;
    bool weights_ok_ = true;
    std::vector<GraphSnapshot> union_rounds_;
    std::vector<GraphSnapshot> cut_rounds_;
};

inline std::int64_t clamp_to_horizon(std::int64_t max_rounds, const TopologySequence& seq) {
    if (seq.horizon() && *seq.horizon() < max_rounds) return *seq.horizon();
    return max_rounds;
}

}  // namespace avgnet::detail
