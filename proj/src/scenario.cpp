#include "avgnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "avgnet/balancing.hpp"
#include "avgnet/engine.hpp"
#include "avgnet/io.hpp"
#include "avgnet/quantized.hpp"
#include "avgnet/rng.hpp"

namespace avgnet {

namespace {

const std::set<std::string> kProtocols = {"matrix-sequence", "equal-neighbor", "balancing",
                                          "circulant", "converse"};

std::string init_kind_name(InitSpec::Kind k) {
    switch (k) {
        case InitSpec::Kind::explicit_values: return "explicit";
        case InitSpec::Kind::seeded_uniform: return "seeded-uniform";
        case InitSpec::Kind::eigenvector: return "eigenvector";
    }
    return "?";
}

}  // namespace

nlohmann::json ScenarioConfig::resolved() const {
    nlohmann::json j;
    j["protocol"] = protocol;
    j["n"] = n;
    j["b"] = b;
    j["eta"] = eta;
    j["epsilon"] = epsilon;
    if (q)
        j["q"] = *q;
    else
        j["q"] = nullptr;
    j["seed"] = seed;
    j["max_rounds"] = max_rounds;
    j["record_stride"] = record_stride;
    j["rng"] = "mt19937_64";

    nlohmann::json init_j;
    init_j["kind"] = init_kind_name(init.kind);
    if (init.kind == InitSpec::Kind::explicit_values) init_j["values"] = init.values;
    if (init.kind == InitSpec::Kind::seeded_uniform) {
        init_j["low"] = init.low;
        init_j["high"] = init.high;
    }
    j["init"] = init_j;

    if (!matrices.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const WeightMatrix& A : matrices) arr.push_back(matrix_to_json(A));
        j["matrices"] = arr;
    }
    if (!graphs.empty()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const GraphSnapshot& g : graphs) arr.push_back(snapshot_to_json(g));
        j["graphs"] = arr;
    }
    if (random_graphs) j["random_graphs"] = {{"edge_probability", edge_probability}};
    if (protocol == "equal-neighbor") j["weight_eps"] = weight_eps;
    return j;
}

ScenarioConfig parse_scenario(const nlohmann::json& j) {
    std::vector<std::string> bad;
    auto flag = [&](const std::string& field) { bad.push_back(field); };

    ScenarioConfig c;
    if (!j.is_object()) throw ConfigError("scenario must be a JSON object", {"<root>"});

    c.protocol = j.value("protocol", std::string{});
    if (!kProtocols.count(c.protocol)) flag("protocol");

    c.n = j.value("n", 0);
    c.b = j.value("b", std::int64_t{1});
    c.eta = j.value("eta", 0.25);
    c.epsilon = j.value("epsilon", 0.01);
    if (j.contains("q") && !j.at("q").is_null()) c.q = j.at("q").get<std::int64_t>();
    c.seed = j.value("seed", std::uint64_t{0});
    c.max_rounds = j.value("max_rounds", std::int64_t{10000});
    c.record_stride = j.value("record_stride", std::int64_t{1});

    if (j.contains("init")) {
        const auto& init_j = j.at("init");
        const std::string kind = init_j.value("kind", "seeded-uniform");
        if (kind == "explicit") {
            c.init.kind = InitSpec::Kind::explicit_values;
            if (init_j.contains("values"))
                c.init.values = init_j.at("values").get<NodeVector>();
            else
                flag("init.values");
        } else if (kind == "seeded-uniform") {
            c.init.kind = InitSpec::Kind::seeded_uniform;
            c.init.low = init_j.value("low", 0.0);
            c.init.high = init_j.value("high", 1.0);
            if (!(c.init.low < c.init.high)) flag("init.low/init.high");
        } else if (kind == "eigenvector") {
            c.init.kind = InitSpec::Kind::eigenvector;
        } else {
            flag("init.kind");
        }
    }

    try {
        if (j.contains("matrices"))
            for (const auto& m : j.at("matrices")) c.matrices.push_back(matrix_from_json(m));
    } catch (const std::exception&) {
        flag("matrices");
    }
    try {
        if (j.contains("graphs"))
            for (const auto& g : j.at("graphs")) c.graphs.push_back(snapshot_from_json(g));
    } catch (const std::exception&) {
        flag("graphs");
    }
    if (j.contains("random_graphs")) {
        c.random_graphs = true;
        if (j.at("random_graphs").is_object())
            c.edge_probability = j.at("random_graphs").value("edge_probability", 0.2);
        if (!(c.edge_probability >= 0.0 && c.edge_probability <= 1.0)) flag("random_graphs.edge_probability");
    }
    c.weight_eps = j.value("weight_eps", 0.0);

    // Cross-field checks.
    for (const WeightMatrix& m : c.matrices)
        if (m.n != c.matrices.front().n) {
            flag("matrices");
            break;
        }
    for (const GraphSnapshot& g : c.graphs)
        if (g.n != c.graphs.front().n) {
            flag("graphs");
            break;
        }
    if (c.protocol == "matrix-sequence") {
        if (c.matrices.empty())
            flag("matrices");
        else
            c.n = c.matrices.front().n;
    }
    if (c.protocol == "equal-neighbor" || c.protocol == "balancing") {
        if (!c.graphs.empty())
            c.n = c.graphs.front().n;
        else if (!c.random_graphs)
            flag("graphs/random_graphs");
        else if (c.n < 2)
            flag("n");
    }
    if (c.protocol == "circulant") {
        if (c.n < 3) flag("n");
        if (!(c.eta > 0.0 && c.eta < 0.5)) flag("eta");
    }
    if (c.protocol == "converse") {
        if (c.n < 4 || c.n % 2 != 0) flag("n");
        if (!c.q || *c.q < 1 || !(*c.q < c.n / 2)) flag("q");
    } else {
        if (c.n < 1) flag("n");
        if (c.init.kind == InitSpec::Kind::explicit_values &&
            c.n > 0 && static_cast<int>(c.init.values.size()) != c.n)
            flag("init.values");
        if (c.init.kind == InitSpec::Kind::eigenvector && c.protocol != "circulant")
            flag("init.kind");
    }
    if (c.b < 1) flag("b");
    if (!(c.epsilon > 0.0 && c.epsilon < 1.0)) flag("epsilon");
    if (c.q && *c.q < 1) flag("q");
    if (c.max_rounds < 0) flag("max_rounds");
    if (c.record_stride < 1) flag("record_stride");
    if (c.weight_eps < 0.0) flag("weight_eps");

    if (!bad.empty()) {
        std::string what = "invalid scenario fields:";
        for (const auto& f : bad) what += " " + f;
        throw ConfigError(what, bad);
    }
    return c;
}

namespace {

NodeVector build_initial(const ScenarioConfig& c) {
    switch (c.init.kind) {
        case InitSpec::Kind::explicit_values:
            return c.init.values;
        case InitSpec::Kind::eigenvector:
            return circulant_second_eigenvector(c.n);
        case InitSpec::Kind::seeded_uniform: {
            Rng rng(derive_seed(c.seed, 0x696e6974 /* "init" */));
            NodeVector x(static_cast<std::size_t>(c.n));
            for (double& v : x) v = rng.next_range(c.init.low, c.init.high);
            return x;
        }
    }
    throw std::logic_error("build_initial: unreachable");
}

QuantizedVector build_initial_quantized(const ScenarioConfig& c) {
    const std::int64_t q = *c.q;
    if (c.init.kind == InitSpec::Kind::seeded_uniform) {
        // Uniform multiples of 1/Q in [low, high].
        Rng rng(derive_seed(c.seed, 0x696e6974 /* "init" */));
        const auto lo = static_cast<std::int64_t>(std::ceil(c.init.low * static_cast<double>(q)));
        const auto hi = static_cast<std::int64_t>(std::floor(c.init.high * static_cast<double>(q)));
        if (lo > hi) throw ConfigError("init range contains no multiple of 1/q", {"init.low/init.high"});
        QuantizedVector x;
        x.resolution_q = q;
        x.numerators.resize(static_cast<std::size_t>(c.n));
        for (auto& v : x.numerators) v = rng.next_int(lo, hi);
        return x;
    }
    return QuantizedVector::floor_of(build_initial(c), q);
}

TopologySequence build_graph_sequence(const ScenarioConfig& c) {
    if (!c.graphs.empty()) return TopologySequence::periodic_graphs(c.graphs, c.b);
    return TopologySequence::random_connected(c.n, c.b, c.edge_probability, c.seed);
}

TopologySequence build_matrix_sequence(const ScenarioConfig& c) {
    if (c.protocol == "matrix-sequence") return TopologySequence::periodic_matrices(c.matrices, c.b);
    if (c.protocol == "equal-neighbor") {
        const double eps = c.weight_eps > 0.0 ? c.weight_eps : 1.0 / c.n;
        return with_equal_neighbor_weights(build_graph_sequence(c), eps);
    }
    // circulant: the coupling matrix at the start of each window, identity
    // in between.
    const WeightMatrix A = circulant_matrix(c.n, c.eta);
    const WeightMatrix I = WeightMatrix::identity(c.n);
    const std::int64_t b = c.b;
    return TopologySequence::from_matrices(
        [A, I, b](std::int64_t k) { return k % b == 0 ? A : I; }, b);
}

}  // namespace

ExecutionResult execute(const ScenarioConfig& c) {
    ExecutionResult result;
    nlohmann::json& out = result.report;
    out["config"] = c.resolved();

    if (c.protocol == "converse") {
        const ConverseScenario sc = converse_scenario(c.n, *c.q);
        const QuantizedRunReport report =
            run_quantized(sc.x0, sc.as_sequence(), c.max_rounds, c.record_stride);
        out["run"] = report_to_json(report);
        out["true_average"] = mean(sc.x0.to_real());
        out["quantization_error"] = report.mean_drift ? nlohmann::json(*report.mean_drift)
                                                      : nlohmann::json(nullptr);
        result.trajectory_csv = trajectory_csv(report);
        return result;
    }

    if (c.q) {
        const QuantizedVector x0 = build_initial_quantized(c);
        const QuantizedRunReport report =
            c.protocol == "balancing"
                ? run_quantized_balancing(x0, build_graph_sequence(c), c.max_rounds, c.record_stride)
                : run_quantized(x0, build_matrix_sequence(c), c.max_rounds, c.record_stride);
        out["run"] = report_to_json(report);
        result.trajectory_csv = trajectory_csv(report);
        return result;
    }

    const NodeVector x0 = build_initial(c);
    const RunReport report =
        c.protocol == "balancing"
            ? run_balancing(x0, build_graph_sequence(c), c.epsilon, c.max_rounds, c.record_stride)
            : run(x0, build_matrix_sequence(c), c.epsilon, c.max_rounds, c.record_stride);
    out["run"] = report_to_json(report);
    const double target = mean(x0);
    double worst = 0.0;
    for (double v : report.final_values) worst = std::max(worst, std::abs(v - target));
    out["final_error"] = worst;
    result.trajectory_csv = trajectory_csv(report);
    return result;
}

namespace {

void apply_axis(ScenarioConfig& c, const std::string& axis, double value) {
    if (axis == "n")
        c.n = static_cast<int>(value);
    else if (axis == "b")
        c.b = static_cast<std::int64_t>(value);
    else if (axis == "eta")
        c.eta = value;
    else if (axis == "epsilon")
        c.epsilon = value;
    else if (axis == "q")
        c.q = static_cast<std::int64_t>(value);
    else if (axis == "seed")
        c.seed = static_cast<std::uint64_t>(value);
    else if (axis == "max_rounds")
        c.max_rounds = static_cast<std::int64_t>(value);
    else if (axis == "weight_eps")
        c.weight_eps = value;
    else if (axis == "edge_probability")
        c.edge_probability = value;
    else
        throw ConfigError("unknown sweep axis: " + axis, {"axis"});
}

}  // namespace

SweepResult sweep(const ScenarioConfig& base, const std::string& axis,
                  const std::vector<double>& values) {
    SweepResult result;
    result.csv = "value,rounds,final_error,status\n";
    std::vector<double> ordered = values;
    std::sort(ordered.begin(), ordered.end());
    for (double value : ordered) {
        SweepRow row;
        row.value = value;
        try {
            ScenarioConfig c = base;
            apply_axis(c, axis, value);
            const ExecutionResult r = execute(c);
            const auto& run_j = r.report.at("run");
            const char* rounds_key = c.q || c.protocol == "converse" ? "termination_round"
                                                                     : "convergence_time";
            if (!run_j.at(rounds_key).is_null()) row.rounds = run_j.at(rounds_key).get<std::int64_t>();
            if (c.protocol == "converse" || c.q) {
                if (!run_j.at("mean_drift").is_null()) row.final_error = run_j.at("mean_drift").get<double>();
            } else {
                row.final_error = r.report.at("final_error").get<double>();
            }
            row.status = row.rounds ? "ok" : "no-convergence";
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
        }
        result.csv += format_double(row.value);
        result.csv += ',';
        result.csv += row.rounds ? std::to_string(*row.rounds) : std::string{};
        result.csv += ',';
        result.csv += row.final_error ? format_double(*row.final_error) : std::string{};
        result.csv += ',';
        // Error text may contain commas; keep the CSV cell quoted.
        if (row.status.find(',') != std::string::npos)
            result.csv += '"' + row.status + '"';
        else
            result.csv += row.status;
        result.csv += '\n';
        result.rows.push_back(std::move(row));
    }
    return result;
}

}  // namespace avgnet
