#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "avgnet/engine.hpp"
#include "avgnet/graph.hpp"
#include "avgnet/io.hpp"
#include "avgnet/quantized.hpp"
#include "avgnet/scenario.hpp"

namespace {

using avgnet::ConfigError;
using avgnet::ScenarioConfig;

/// Relative output paths are placed under $AVGNET_OUT_DIR when it is set.
std::filesystem::path resolve_out(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("AVGNET_OUT_DIR")) p = std::filesystem::path(dir) / p;
    }
    return p;
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path.string());
    out << content;
}

int fail_config(const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    for (const auto& f : e.fields()) std::cerr << "  offending field: " << f << "\n";
    return 1;
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) values.push_back(std::stod(item));
    }
    return values;
}

struct RunFlags {
    std::string scenario_file;
    std::string protocol;
    std::string graph_seq_file;
    std::string x0;
    std::string out_csv;
    std::string report_file;
    int n = 0;
    std::int64_t b = 0;
    double eta = -1.0;
    double epsilon = -1.0;
    std::int64_t q = 0;
    bool quantized = false;
    std::int64_t max_rounds = -1;
    std::int64_t seed = -1;
    std::int64_t record_stride = 0;
};

nlohmann::json scenario_json_from_flags(const RunFlags& f) {
    nlohmann::json j;
    if (!f.scenario_file.empty()) j = load_json(f.scenario_file);
    if (!f.protocol.empty()) j["protocol"] = f.protocol;
    if (f.n > 0) j["n"] = f.n;
    if (f.b > 0) j["b"] = f.b;
    if (f.eta >= 0.0) j["eta"] = f.eta;
    if (f.epsilon >= 0.0) j["epsilon"] = f.epsilon;
    if (f.q > 0 || f.quantized) j["q"] = f.q;
    if (f.max_rounds >= 0) j["max_rounds"] = f.max_rounds;
    if (f.seed >= 0) j["seed"] = f.seed;
    if (f.record_stride > 0) j["record_stride"] = f.record_stride;

    if (!f.graph_seq_file.empty()) {
        const nlohmann::json g = load_json(f.graph_seq_file);
        if (g.is_array())
            j["graphs"] = g;
        else if (g.is_object() && g.contains("graphs"))
            j["graphs"] = g.at("graphs");
        else
            j["graphs"] = nlohmann::json::array({g});
    }
    const std::string protocol = j.value("protocol", std::string{});
    if ((protocol == "balancing" || protocol == "equal-neighbor") && !j.contains("graphs") &&
        !j.contains("random_graphs"))
        j["random_graphs"] = nlohmann::json::object();
    if (!f.x0.empty()) {
        // Either a seed for the uniform initializer or a JSON file with values.
        char* end = nullptr;
        const long long as_int = std::strtoll(f.x0.c_str(), &end, 10);
        if (end && *end == '\0') {
            j["seed"] = as_int;
            j["init"] = {{"kind", "seeded-uniform"}};
        } else {
            const nlohmann::json x = load_json(f.x0);
            j["init"] = {{"kind", "explicit"},
                         {"values", x.is_array() ? x : x.at("values")}};
        }
    }
    return j;
}

int cmd_run(const RunFlags& flags) {
    const ScenarioConfig config = avgnet::parse_scenario(scenario_json_from_flags(flags));
    const avgnet::ExecutionResult result = avgnet::execute(config);

    if (!flags.out_csv.empty()) write_file(resolve_out(flags.out_csv), result.trajectory_csv);
    if (!flags.report_file.empty())
        write_file(resolve_out(flags.report_file), result.report.dump(2) + "\n");

    const auto& run_j = result.report.at("run");
    std::cout << "protocol: " << config.protocol << "\n";
    std::cout << "rounds executed: " << run_j.at("rounds_executed") << "\n";
    if (run_j.contains("convergence_time"))
        std::cout << "convergence time: " << run_j.at("convergence_time") << "\n";
    if (run_j.contains("termination_round"))
        std::cout << "termination round: " << run_j.at("termination_round") << "\n";
    if (run_j.contains("mean_drift") && !run_j.at("mean_drift").is_null())
        std::cout << "mean drift: " << run_j.at("mean_drift") << "\n";
    if (result.report.contains("final_error"))
        std::cout << "final error: " << result.report.at("final_error") << "\n";
    if (flags.out_csv.empty()) std::cout << result.trajectory_csv;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"avgnet: distributed averaging over time-varying topologies"};
    app.require_subcommand(1);

    RunFlags run_flags;
    CLI::App* run_cmd = app.add_subcommand("run", "execute one scenario");
    run_cmd->add_option("--scenario", run_flags.scenario_file, "scenario JSON file");
    run_cmd->add_option("--protocol", run_flags.protocol,
                        "matrix-sequence|equal-neighbor|balancing|circulant|converse");
    run_cmd->add_option("--graph-seq", run_flags.graph_seq_file, "JSON list of graph snapshots");
    run_cmd->add_option("--x0", run_flags.x0, "initial values: JSON file or integer seed");
    run_cmd->add_option("--n", run_flags.n, "node count");
    run_cmd->add_option("--b", run_flags.b, "window length");
    run_cmd->add_option("--eta", run_flags.eta, "circulant coupling / min weight");
    run_cmd->add_option("--epsilon", run_flags.epsilon, "convergence threshold");
    run_cmd->add_flag("--quantized", run_flags.quantized, "quantized update (requires --q)");
    run_cmd->add_option("--q", run_flags.q, "quantization resolution");
    run_cmd->add_option("--max-rounds", run_flags.max_rounds, "round budget");
    run_cmd->add_option("--seed", run_flags.seed, "random seed");
    run_cmd->add_option("--record-stride", run_flags.record_stride, "trajectory stride");
    run_cmd->add_option("--out", run_flags.out_csv, "trajectory CSV path");
    run_cmd->add_option("--report", run_flags.report_file, "report JSON path");

    std::string sweep_scenario, sweep_axis, sweep_values, sweep_out;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a scenario across parameter values");
    sweep_cmd->add_option("--scenario", sweep_scenario, "base scenario JSON file")->required();
    sweep_cmd->add_option("--axis", sweep_axis, "parameter to sweep")->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();
    sweep_cmd->add_option("--out", sweep_out, "summary CSV path");

    CLI::App* verify_cmd = app.add_subcommand("verify", "check matrices or scenario assumptions");
    std::string verify_matrix_file;
    CLI::App* verify_matrix = verify_cmd->add_subcommand("matrix", "validate a weight matrix file");
    verify_matrix->add_option("file", verify_matrix_file, "matrix JSON file")->required();
    std::string verify_scenario_file;
    std::int64_t verify_windows = 10;
    CLI::App* verify_assumptions =
        verify_cmd->add_subcommand("assumptions", "check window connectivity and cut crossing");
    verify_assumptions->add_option("--scenario", verify_scenario_file, "scenario JSON file")->required();
    verify_assumptions->add_option("--windows", verify_windows, "number of windows to check");

    int converse_n = 0;
    std::int64_t converse_q = 0;
    std::string converse_out, converse_scenario_out;
    CLI::App* converse_cmd = app.add_subcommand("converse", "adversarial quantized scenario");
    converse_cmd->add_option("--n", converse_n, "even node count")->required();
    converse_cmd->add_option("--q", converse_q, "resolution, must satisfy q < n/2")->required();
    converse_cmd->add_option("--out", converse_out, "trajectory CSV path");
    converse_cmd->add_option("--scenario-out", converse_scenario_out,
                             "write the generated schedule as JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(run_flags);

        if (sweep_cmd->parsed()) {
            const ScenarioConfig base = avgnet::parse_scenario(load_json(sweep_scenario));
            const avgnet::SweepResult result =
                avgnet::sweep(base, sweep_axis, parse_values(sweep_values));
            if (!sweep_out.empty())
                write_file(resolve_out(sweep_out), result.csv);
            else
                std::cout << result.csv;
            return 0;
        }

        if (verify_matrix->parsed()) {
            const avgnet::WeightMatrix A = avgnet::matrix_from_json(load_json(verify_matrix_file));
            const avgnet::ValidationReport report = avgnet::validate_weight_matrix(A);
            if (report.pass) {
                std::cout << "PASS: doubly stochastic, positive diagonal, min positive entry >= eta\n";
                return 0;
            }
            std::cout << "FAIL:\n";
            for (const auto& v : report.violations) std::cout << "  " << v << "\n";
            return 2;
        }

        if (verify_assumptions->parsed()) {
            const ScenarioConfig config = avgnet::parse_scenario(load_json(verify_scenario_file));
            // Reuse execute()'s sequence wiring; the tiny epsilon keeps the
            // probe from converging before the requested windows elapse.
            ScenarioConfig limited = config;
            limited.max_rounds = verify_windows * config.b;
            if (!limited.q) limited.epsilon = 1e-300;
            const avgnet::ExecutionResult probe = avgnet::execute(limited);
            const auto& audits = probe.report.at("run").at("assumption_audit");
            bool ok = true;
            for (const auto& a : audits) {
                const bool window_ok = a.at("union_connected").get<bool>() &&
                                       a.at("cut_crossing_ok").get<bool>() &&
                                       a.at("weights_ok").get<bool>();
                ok = ok && window_ok;
                std::cout << "window " << a.at("window") << ": union_connected="
                          << a.at("union_connected") << " cut_crossing=" << a.at("cut_crossing_ok")
                          << " weights=" << a.at("weights_ok") << "\n";
            }
            std::cout << (ok ? "PASS" : "FAIL") << "\n";
            return ok ? 0 : 2;
        }

        if (converse_cmd->parsed()) {
            const avgnet::ConverseScenario sc = avgnet::converse_scenario(converse_n, converse_q);
            const avgnet::QuantizedRunReport report =
                avgnet::run_quantized(sc.x0, sc.as_sequence(), converse_n / 2);
            std::cout << "true average: " << avgnet::format_double(avgnet::mean(sc.x0.to_real()))
                      << "\n";
            std::cout << "consensus numerator: "
                      << (report.final_numerator ? std::to_string(*report.final_numerator) : "-")
                      << " / " << converse_q << "\n";
            std::cout << "quantization error: "
                      << (report.mean_drift ? avgnet::format_double(*report.mean_drift) : "-")
                      << "\n";
            if (!converse_out.empty())
                write_file(resolve_out(converse_out), avgnet::trajectory_csv(report));
            if (!converse_scenario_out.empty())
                write_file(resolve_out(converse_scenario_out),
                           avgnet::converse_to_json(sc).dump(2) + "\n");
            return 0;
        }
    } catch (const ConfigError& e) {
        return fail_config(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
