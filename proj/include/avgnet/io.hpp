#pragma once

#include <string>

#include <json.hpp>

#include "avgnet/balancing.hpp"
#include "avgnet/engine.hpp"
#include "avgnet/graph.hpp"
#include "avgnet/quantized.hpp"
#include "avgnet/weights.hpp"

namespace avgnet {

/// Shortest round-trip decimal form; stable on a given platform.
std::string format_double(double v);

/// {"n": int, "edges": [[j, i], ...]} with self-edges implicit: they are
/// omitted on save and always added on load.  Node indices are 0-based.
nlohmann::json snapshot_to_json(const GraphSnapshot& g);
GraphSnapshot snapshot_from_json(const nlohmann::json& j);

/// {"n": int, "eta": float, "rows": [[...], ...]}; rejects ragged rows.
nlohmann::json matrix_to_json(const WeightMatrix& A);
WeightMatrix matrix_from_json(const nlohmann::json& j);

/// CSV, one row per recorded round: k,V,V_underbar,min,max,mean
std::string trajectory_csv(const RunReport& report);
/// CSV: k,V_underbar,V,min_numerator,max_numerator,mean
std::string trajectory_csv(const QuantizedRunReport& report);

nlohmann::json report_to_json(const RunReport& report);
nlohmann::json report_to_json(const QuantizedRunReport& report);

/// Debug form of a round's accepted exchanges:
/// [{"offerer", "acceptor", "amount"}, ...].
nlohmann::json exchanges_to_json(const std::vector<Exchange>& exchanges);

/// Full adversarial scenario: initial numerators, resolution and the
/// per-phase snapshots and matrices.
nlohmann::json converse_to_json(const ConverseScenario& scenario);

}  // namespace avgnet
