#include "avgnet/io.hpp"

#include <charconv>
#include <stdexcept>

namespace avgnet {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

nlohmann::json snapshot_to_json(const GraphSnapshot& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [j, i] : g.edges)
        if (j != i) edges.push_back({j, i});
    return {{"n", g.n}, {"edges", edges}};
}

GraphSnapshot snapshot_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw std::invalid_argument("snapshot_from_json: expected {\"n\", \"edges\"}");
    const int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("snapshot_from_json: edge entries must be [from, to]");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return GraphSnapshot(n, std::move(edges));
}

nlohmann::json matrix_to_json(const WeightMatrix& A) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < A.n; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int j = 0; j < A.n; ++j) row.push_back(A(i, j));
        rows.push_back(std::move(row));
    }
    return {{"n", A.n}, {"eta", A.eta}, {"rows", rows}};
}

WeightMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("eta") || !j.contains("rows"))
        throw std::invalid_argument("matrix_from_json: expected {\"n\", \"eta\", \"rows\"}");
    const int n = j.at("n").get<int>();
    if (n < 1) throw std::invalid_argument("matrix_from_json: n must be >= 1");
    const auto& rows = j.at("rows");
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
        throw std::invalid_argument("matrix_from_json: matrix is not square (row count)");
    WeightMatrix A(n, j.at("eta").get<double>());
    for (int i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw std::invalid_argument("matrix_from_json: matrix is not square (row " +
                                        std::to_string(i) + ")");
        for (int c = 0; c < n; ++c) A(i, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
    return A;
}

std::string trajectory_csv(const RunReport& report) {
    std::string out = "k,V,V_underbar,min,max,mean\n";
    for (const TrajectoryPoint& p : report.trajectory) {
        out += std::to_string(p.round);
        out += ',';
        out += format_double(p.v);
        out += ',';
        out += format_double(p.v_under);
        out += ',';
        out += format_double(p.min);
        out += ',';
        out += format_double(p.max);
        out += ',';
        out += format_double(p.mean);
        out += '\n';
    }
    return out;
}

std::string trajectory_csv(const QuantizedRunReport& report) {
    std::string out = "k,V_underbar,V,min_numerator,max_numerator,mean\n";
    for (const QuantizedTrajectoryPoint& p : report.trajectory) {
        out += std::to_string(p.round);
        out += ',';
        out += format_double(p.v_under);
        out += ',';
        out += format_double(p.v);
        out += ',';
        out += std::to_string(p.min_numerator);
        out += ',';
        out += std::to_string(p.max_numerator);
        out += ',';
        out += format_double(p.mean);
        out += '\n';
    }
    return out;
}

namespace {

nlohmann::json audits_to_json(const std::vector<WindowAudit>& audits) {
    nlohmann::json arr = nlohmann::json::array();
    for (const WindowAudit& a : audits) {
        arr.push_back({{"window", a.window},
                       {"union_connected", a.union_connected},
                       {"cut_crossing_ok", a.cut_crossing_ok},
                       {"weights_ok", a.weights_ok},
                       {"v_start", a.v_start},
                       {"v_end", a.v_end},
                       {"gap_energy_start", a.gap_energy_start}});
    }
    return arr;
}

}  // namespace

nlohmann::json report_to_json(const RunReport& report) {
    nlohmann::json j;
    j["rounds_executed"] = report.rounds_executed;
    if (report.convergence_time)
        j["convergence_time"] = *report.convergence_time;
    else
        j["convergence_time"] = nullptr;
    j["final_values"] = report.final_values;
    j["assumption_audit"] = audits_to_json(report.assumption_audit);
    j["all_windows_ok"] = report.all_windows_ok();
    return j;
}

nlohmann::json exchanges_to_json(const std::vector<Exchange>& exchanges) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Exchange& e : exchanges)
        arr.push_back({{"offerer", e.offerer}, {"acceptor", e.acceptor}, {"amount", e.amount}});
    return arr;
}

nlohmann::json converse_to_json(const ConverseScenario& scenario) {
    nlohmann::json j;
    j["n"] = scenario.n;
    j["q"] = scenario.resolution_q;
    j["x0_numerators"] = scenario.x0.numerators;
    nlohmann::json rounds = nlohmann::json::array();
    for (const GraphSnapshot& g : scenario.rounds) rounds.push_back(snapshot_to_json(g));
    j["rounds"] = rounds;
    nlohmann::json matrices = nlohmann::json::array();
    for (const WeightMatrix& A : scenario.matrices) matrices.push_back(matrix_to_json(A));
    j["matrices"] = matrices;
    return j;
}

nlohmann::json report_to_json(const QuantizedRunReport& report) {
    nlohmann::json j;
    j["rounds_executed"] = report.rounds_executed;
    j["resolution_q"] = report.resolution_q;
    j["k_levels"] = report.k_levels;
    if (report.termination_round)
        j["termination_round"] = *report.termination_round;
    else
        j["termination_round"] = nullptr;
    if (report.final_numerator)
        j["final_numerator"] = *report.final_numerator;
    else
        j["final_numerator"] = nullptr;
    if (report.mean_drift)
        j["mean_drift"] = *report.mean_drift;
    else
        j["mean_drift"] = nullptr;
    j["final_numerators"] = report.final_values.numerators;
    j["assumption_audit"] = audits_to_json(report.assumption_audit);
    return j;
}

}  // namespace avgnet
