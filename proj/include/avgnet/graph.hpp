#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "avgnet/weights.hpp"

namespace avgnet {

/// Directed communication graph for one round.  An edge (j, i) means node i
/// receives node j's value, i.e. a_ij may be positive.  Self-edges (i, i)
/// are always present; the constructor adds any that are missing.
struct GraphSnapshot {
    GraphSnapshot() = default;
    GraphSnapshot(int n, std::vector<std::pair<int, int>> directed_edges);

    int n = 0;
    /// Sorted, unique, self-edges included.
    std::vector<std::pair<int, int>> edges;

    bool has_edge(int from, int to) const;
    bool is_undirected() const;

    /// Targets of edges leaving `from` (self excluded).
    const std::vector<int>& successors(int from) const { return out_[from]; }
    /// Sources of edges entering `to` (self excluded).
    const std::vector<int>& predecessors(int to) const { return in_[to]; }
    /// Neighbor set of an undirected snapshot (same as successors).
    const std::vector<int>& neighbors(int v) const { return out_[v]; }
    int degree(int v) const { return static_cast<int>(out_[v].size()); }

    /// Convenience: undirected graph from unordered pairs {i, j}.
    static GraphSnapshot undirected(int n, const std::vector<std::pair<int, int>>& pairs);
    static GraphSnapshot complete(int n);
    static GraphSnapshot self_loops_only(int n);

private:
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
};

/// Deterministic map from a round index to the communication topology,
/// either as graph snapshots or directly as weight matrices.  Immutable
/// after construction; the provider must be a pure function of k.
class TopologySequence {
public:
    using GraphProvider = std::function<GraphSnapshot(std::int64_t)>;
    using MatrixProvider = std::function<WeightMatrix(std::int64_t)>;

    static TopologySequence from_graphs(GraphProvider provider, std::int64_t window,
                                        std::optional<std::int64_t> horizon = {});
    static TopologySequence from_matrices(MatrixProvider provider, std::int64_t window,
                                          std::optional<std::int64_t> horizon = {});

    static TopologySequence static_graph(GraphSnapshot g, std::int64_t window = 1);
    static TopologySequence static_matrix(WeightMatrix A, std::int64_t window = 1);
    /// Round-robin over a fixed list of snapshots (round k uses entry k mod size).
    static TopologySequence periodic_graphs(std::vector<GraphSnapshot> list, std::int64_t window);
    static TopologySequence periodic_matrices(std::vector<WeightMatrix> list, std::int64_t window);

    /// Seeded Erdos-style generator: each round of a window draws undirected
    /// edges with probability edge_probability, then a repair pass links the
    /// remaining components of the window union so that every window union
    /// is connected.  Deterministic in (seed, k).
    static TopologySequence random_connected(int n, std::int64_t window, double edge_probability,
                                             std::uint64_t seed);

    bool has_matrices() const { return static_cast<bool>(matrices_); }
    std::int64_t window_length() const { return window_; }
    std::optional<std::int64_t> horizon() const { return horizon_; }

    /// Snapshot for round k; in matrix mode this is the support graph of the
    /// round's matrix.  Throws std::out_of_range past the horizon.
    GraphSnapshot snapshot_at(std::int64_t k) const;
    /// Weight matrix for round k; throws std::logic_error in graph mode.
    WeightMatrix matrix_at(std::int64_t k) const;

private:
    TopologySequence() = default;

    GraphProvider graphs_;
    MatrixProvider matrices_;
    std::int64_t window_ = 1;
    std::optional<std::int64_t> horizon_;
};

/// Support graph of a weight matrix: edge (j, i) iff a_ij > 0.
GraphSnapshot support_graph(const WeightMatrix& A);

/// Wraps a graph sequence with equal-neighbor weights of parameter eps.
TopologySequence with_equal_neighbor_weights(const TopologySequence& graphs, double eps);

/// True iff every node reaches every other along directed edges.
bool is_strongly_connected(const GraphSnapshot& g);

/// Union of the edge sets of rounds k_start..k_end inclusive.
GraphSnapshot union_graph(const TopologySequence& seq, std::int64_t k_start, std::int64_t k_end);
GraphSnapshot union_graph(const std::vector<GraphSnapshot>& rounds);

/// True iff for every window w in 0..num_windows-1 the union of rounds
/// wB..(w+1)B-1 is strongly connected.
bool check_window_connectivity(const TopologySequence& seq, std::int64_t num_windows);

/// Cut-crossing condition for one window: sort nodes by x nonincreasing
/// (ties by ascending index); every cut between distinct adjacent sorted
/// values must be crossed, in either direction, by some edge of some round
/// in the window.
bool check_cut_crossing(const TopologySequence& seq, std::int64_t window_index,
                        const std::vector<double>& x_at_window_start);
bool check_cut_crossing(const std::vector<GraphSnapshot>& window_rounds,
                        const std::vector<double>& x_at_window_start);

}  // namespace avgnet
