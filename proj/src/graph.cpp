#include "avgnet/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "avgnet/rng.hpp"

namespace avgnet {

GraphSnapshot::GraphSnapshot(int n_, std::vector<std::pair<int, int>> directed_edges)
    : n(n_), edges(std::move(directed_edges)) {
    if (n <= 0) throw std::invalid_argument("GraphSnapshot: node count must be positive");
    for (const auto& [j, i] : edges) {
        if (j < 0 || j >= n || i < 0 || i >= n)
            throw std::invalid_argument("GraphSnapshot: edge endpoint out of range");
    }
    for (int i = 0; i < n; ++i) edges.emplace_back(i, i);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    out_.resize(n);
    in_.resize(n);
    for (const auto& [j, i] : edges) {
        if (j == i) continue;
        out_[j].push_back(i);
        in_[i].push_back(j);
    }
}

bool GraphSnapshot::has_edge(int from, int to) const {
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(from, to));
}

bool GraphSnapshot::is_undirected() const {
    for (const auto& [j, i] : edges)
        if (!has_edge(i, j)) return false;
    return true;
}

GraphSnapshot GraphSnapshot::undirected(int n, const std::vector<std::pair<int, int>>& pairs) {
    std::vector<std::pair<int, int>> dir;
    dir.reserve(pairs.size() * 2);
    for (const auto& [i, j] : pairs) {
        dir.emplace_back(i, j);
        dir.emplace_back(j, i);
    }
    return GraphSnapshot(n, std::move(dir));
}

GraphSnapshot GraphSnapshot::complete(int n) {
    std::vector<std::pair<int, int>> dir;
    dir.reserve(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) dir.emplace_back(i, j);
    return GraphSnapshot(n, std::move(dir));
}

GraphSnapshot GraphSnapshot::self_loops_only(int n) { return GraphSnapshot(n, {}); }

namespace {

int reach_count(const GraphSnapshot& g, int start, bool reverse) {
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        const auto& next = reverse ? g.predecessors(v) : g.successors(v);
        for (int w : next) {
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count;
}

}  // namespace

bool is_strongly_connected(const GraphSnapshot& g) {
    if (g.n == 1) return true;
    return reach_count(g, 0, false) == g.n && reach_count(g, 0, true) == g.n;
}

TopologySequence TopologySequence::from_graphs(GraphProvider provider, std::int64_t window,
                                               std::optional<std::int64_t> horizon) {
    if (window < 1) throw std::invalid_argument("TopologySequence: window length must be >= 1");
    TopologySequence s;
    s.graphs_ = std::move(provider);
    s.window_ = window;
    s.horizon_ = horizon;
    return s;
}

TopologySequence TopologySequence::from_matrices(MatrixProvider provider, std::int64_t window,
                                                 std::optional<std::int64_t> horizon) {
    if (window < 1) throw std::invalid_argument("TopologySequence: window length must be >= 1");
    TopologySequence s;
    s.matrices_ = std::move(provider);
    s.window_ = window;
    s.horizon_ = horizon;
    return s;
}

TopologySequence TopologySequence::static_graph(GraphSnapshot g, std::int64_t window) {
    return from_graphs([g = std::move(g)](std::int64_t) { return g; }, window);
}

TopologySequence TopologySequence::static_matrix(WeightMatrix A, std::int64_t window) {
    return from_matrices([A = std::move(A)](std::int64_t) { return A; }, window);
}

TopologySequence TopologySequence::periodic_graphs(std::vector<GraphSnapshot> list,
                                                   std::int64_t window) {
    if (list.empty()) throw std::invalid_argument("periodic_graphs: empty list");
    const auto size = static_cast<std::int64_t>(list.size());
    return from_graphs(
        [list = std::move(list), size](std::int64_t k) { return list[static_cast<std::size_t>(k % size)]; },
        window);
}

TopologySequence TopologySequence::periodic_matrices(std::vector<WeightMatrix> list,
                                                     std::int64_t window) {
    if (list.empty()) throw std::invalid_argument("periodic_matrices: empty list");
    const auto size = static_cast<std::int64_t>(list.size());
    return from_matrices(
        [list = std::move(list), size](std::int64_t k) { return list[static_cast<std::size_t>(k % size)]; },
        window);
}

namespace {

/// One window of the seeded random sequence: Erdos draws per round plus a
/// repair pass that chains together the components of the window union.
std::vector<GraphSnapshot> random_window(int n, std::int64_t window, double p,
                                         std::uint64_t seed, std::int64_t window_index) {
    Rng rng(derive_seed(seed, 0x67726170 /* "grap" */, static_cast<std::uint64_t>(window_index)));

    std::vector<std::vector<std::pair<int, int>>> round_pairs(static_cast<std::size_t>(window));
    for (std::int64_t r = 0; r < window; ++r) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.next_unit() < p) round_pairs[static_cast<std::size_t>(r)].emplace_back(i, j);
    }

    // Union-find over the window union.
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& pairs : round_pairs)
        for (const auto& [i, j] : pairs) parent[find(i)] = find(j);

    std::vector<int> roots;
    for (int i = 0; i < n; ++i)
        if (find(i) == i) roots.push_back(i);

    // Repair: link consecutive components with an edge placed in a random
    // round of the window.
    for (std::size_t t = 1; t < roots.size(); ++t) {
        const auto r = static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(window)));
        round_pairs[r].emplace_back(roots[t - 1], roots[t]);
        parent[find(roots[t - 1])] = find(roots[t]);
    }

    std::vector<GraphSnapshot> result;
    result.reserve(static_cast<std::size_t>(window));
    for (std::int64_t r = 0; r < window; ++r)
        result.push_back(GraphSnapshot::undirected(n, round_pairs[static_cast<std::size_t>(r)]));
    return result;
}

}  // namespace

TopologySequence TopologySequence::random_connected(int n, std::int64_t window,
                                                    double edge_probability, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("random_connected: need at least two nodes");
    if (edge_probability < 0.0 || edge_probability > 1.0)
        throw std::invalid_argument("random_connected: edge probability outside [0, 1]");
    return from_graphs(
        [n, window, edge_probability, seed](std::int64_t k) {
            const std::int64_t w = k / window;
            return random_window(n, window, edge_probability, seed, w)[static_cast<std::size_t>(k % window)];
        },
        window);
}

GraphSnapshot TopologySequence::snapshot_at(std::int64_t k) const {
    if (k < 0) throw std::out_of_range("TopologySequence: negative round index");
    if (horizon_ && k >= *horizon_)
        throw std::out_of_range("TopologySequence: round " + std::to_string(k) + " past horizon");
    if (graphs_) return graphs_(k);
    return support_graph(matrices_(k));
}

WeightMatrix TopologySequence::matrix_at(std::int64_t k) const {
    if (k < 0) throw std::out_of_range("TopologySequence: negative round index");
    if (horizon_ && k >= *horizon_)
        throw std::out_of_range("TopologySequence: round " + std::to_string(k) + " past horizon");
    if (!matrices_) throw std::logic_error("TopologySequence: sequence carries no weight matrices");
    return matrices_(k);
}

GraphSnapshot support_graph(const WeightMatrix& A) {
    std::vector<std::pair<int, int>> dir;
    for (int i = 0; i < A.n; ++i)
        for (int j = 0; j < A.n; ++j)
            if (A(i, j) > 0.0) dir.emplace_back(j, i);
    return GraphSnapshot(A.n, std::move(dir));
}

TopologySequence with_equal_neighbor_weights(const TopologySequence& graphs, double eps) {
    return TopologySequence::from_matrices(
        [graphs, eps](std::int64_t k) { return equal_neighbor_matrix(graphs.snapshot_at(k), eps); },
        graphs.window_length(), graphs.horizon());
}

GraphSnapshot union_graph(const TopologySequence& seq, std::int64_t k_start, std::int64_t k_end) {
    if (k_start > k_end) throw std::invalid_argument("union_graph: k_start > k_end");
    std::vector<GraphSnapshot> rounds;
    rounds.reserve(static_cast<std::size_t>(k_end - k_start + 1));
    for (std::int64_t k = k_start; k <= k_end; ++k) rounds.push_back(seq.snapshot_at(k));
    return union_graph(rounds);
}

GraphSnapshot union_graph(const std::vector<GraphSnapshot>& rounds) {
    if (rounds.empty()) throw std::invalid_argument("union_graph: empty round list");
    const int n = rounds.front().n;
    std::vector<std::pair<int, int>> all;
    for (const GraphSnapshot& g : rounds) {
        if (g.n != n) throw std::invalid_argument("union_graph: inconsistent node counts");
        all.insert(all.end(), g.edges.begin(), g.edges.end());
    }
    return GraphSnapshot(n, std::move(all));
}

bool check_window_connectivity(const TopologySequence& seq, std::int64_t num_windows) {
    if (num_windows < 1) throw std::invalid_argument("check_window_connectivity: need >= 1 window");
    const std::int64_t B = seq.window_length();
    for (std::int64_t w = 0; w < num_windows; ++w) {
        if (!is_strongly_connected(union_graph(seq, w * B, (w + 1) * B - 1))) return false;
    }
    return true;
}

bool check_cut_crossing(const TopologySequence& seq, std::int64_t window_index,
                        const std::vector<double>& x) {
    const std::int64_t B = seq.window_length();
    std::vector<GraphSnapshot> rounds;
    rounds.reserve(static_cast<std::size_t>(B));
    for (std::int64_t k = window_index * B; k < (window_index + 1) * B; ++k)
        rounds.push_back(seq.snapshot_at(k));
    return check_cut_crossing(rounds, x);
}

bool check_cut_crossing(const std::vector<GraphSnapshot>& window_rounds,
                        const std::vector<double>& x) {
    if (window_rounds.empty()) throw std::invalid_argument("check_cut_crossing: empty window");
    const int n = window_rounds.front().n;
    if (static_cast<int>(x.size()) != n)
        throw std::invalid_argument("check_cut_crossing: value vector size mismatch");
    if (n == 1) return true;

    // Sorted positions: nonincreasing by value, ties by ascending index.
    std::vector<int> order(x.size());
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return x[a] > x[b]; });
    std::vector<int> pos(x.size());
    for (int r = 0; r < n; ++r) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r;

    // crossed[c] marks the cut between sorted positions < c and >= c.
    std::vector<char> crossed(static_cast<std::size_t>(n), 0);
    for (const GraphSnapshot& g : window_rounds) {
        for (const auto& [j, i] : g.edges) {
            if (j == i) continue;
            const int lo = std::min(pos[j], pos[i]);
            const int hi = std::max(pos[j], pos[i]);
            for (int c = lo + 1; c <= hi; ++c) crossed[static_cast<std::size_t>(c)] = 1;
        }
    }

    for (int c = 1; c < n; ++c) {
        const double above = x[order[static_cast<std::size_t>(c - 1)]];
        const double below = x[order[static_cast<std::size_t>(c)]];
        if (above != below && !crossed[static_cast<std::size_t>(c)]) return false;
    }
    return true;
}

}  // namespace avgnet
