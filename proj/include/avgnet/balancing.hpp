#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "avgnet/engine.hpp"
#include "avgnet/graph.hpp"
#include "avgnet/lyapunov.hpp"
#include "avgnet/weights.hpp"

namespace avgnet {

struct Exchange {
    int offerer = 0;
    int acceptor = 0;
    double amount = 0.0;  // (x_offerer - x_acceptor) / 3
};

/// Result of one synchronous offer/accept round, together with the doubly
/// stochastic matrix the exchanges imply.  Every positive entry of the
/// implied matrix is at least 1/3.
struct RoundOutcome {
    NodeVector new_values;
    WeightMatrix implied_matrix;
    std::vector<Exchange> accepted_exchanges;
};

/// One round of the decentralized load-balancing weight selection on an
/// undirected graph: every node broadcasts its value, offers a third of the
/// gap to its smallest-valued strictly-smaller neighbor (ties to the lowest
/// index), accepts only its largest incoming offer (ties to the lowest
/// offerer index), and settles accepted offers.  All four phases run in
/// lockstep; no node sees a same-phase update of another node.
RoundOutcome balancing_round(const NodeVector& x, const GraphSnapshot& g);

using BalancingObserver = std::function<void(std::int64_t round, const RoundOutcome&)>;

/// Iterates balancing_round over an undirected graph sequence.  The window
/// audit checks connectivity of the exogenous graphs and the cut-crossing
/// condition of the realized exchange edges.
RunReport run_balancing(const NodeVector& x0, const TopologySequence& seq, double epsilon,
                        std::int64_t max_rounds, std::int64_t record_stride = 1,
                        const BalancingObserver& observer = {});

}  // namespace avgnet
