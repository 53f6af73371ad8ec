#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "avgnet/graph.hpp"
#include "avgnet/lyapunov.hpp"
#include "avgnet/weights.hpp"

namespace avgnet {

/// Thrown on invalid configuration; lists every offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string what, std::vector<std::string> fields)
        : std::runtime_error(std::move(what)), fields_(std::move(fields)) {}
    const std::vector<std::string>& fields() const { return fields_; }

private:
    std::vector<std::string> fields_;
};

struct InitSpec {
    enum class Kind { explicit_values, seeded_uniform, eigenvector };
    Kind kind = Kind::seeded_uniform;
    NodeVector values;  // explicit
    double low = 0.0;
    double high = 1.0;  // seeded-uniform range
};

/// One experiment: a protocol, its parameters, the topology inputs and the
/// initial condition.  Fully determines the run; equal configs (including
/// the seed) produce byte-identical outputs.
struct ScenarioConfig {
    std::string protocol;  // matrix-sequence | equal-neighbor | balancing | circulant | converse

    int n = 0;
    std::int64_t b = 1;
    double eta = 0.25;         // circulant coupling
    double epsilon = 0.01;
    std::optional<std::int64_t> q;  // quantized when present
    std::uint64_t seed = 0;
    std::int64_t max_rounds = 10000;
    std::int64_t record_stride = 1;
    InitSpec init;

    std::vector<WeightMatrix> matrices;  // matrix-sequence: applied periodically
    std::vector<GraphSnapshot> graphs;   // equal-neighbor / balancing: applied periodically
    bool random_graphs = false;          // ... or generated, seeded, union-connected per window
    double edge_probability = 0.2;
    double weight_eps = 0.0;  // equal-neighbor weight; 0 means 1/n

    nlohmann::json resolved() const;  // canonical JSON form of this config
};

/// Parses and validates a scenario; throws ConfigError listing every bad field.
ScenarioConfig parse_scenario(const nlohmann::json& j);

struct ExecutionResult {
    nlohmann::json report;       // embeds the resolved config under "config"
    std::string trajectory_csv;  // per-round records
};

/// Runs the configured experiment.  Deterministic in the config.
ExecutionResult execute(const ScenarioConfig& config);

struct SweepRow {
    double value = 0.0;
    std::optional<std::int64_t> rounds;      // convergence or termination round
    std::optional<double> final_error;       // max |x_i - mean(x0)|, or mean drift when quantized
    std::string status;                      // "ok", "no-convergence", or an error message
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::string csv;  // value,rounds,final_error,status
};

/// Runs the base scenario once per axis value, in order.  A failed run
/// becomes an error row; the sweep continues.
SweepResult sweep(const ScenarioConfig& base, const std::string& axis,
                  const std::vector<double>& values);

}  // namespace avgnet
