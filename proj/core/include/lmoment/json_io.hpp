#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lmoment/hierarchy.hpp"
#include "lmoment/measures.hpp"
#include "lmoment/moment_matrix.hpp"
#include "lmoment/polynomial.hpp"
#include "lmoment/sdp.hpp"
#include "lmoment/semialgebraic.hpp"

namespace lmoment::json {

using nlohmann::json;

// Parsers throw ValidationError on schema violations; the library's own
// invariants (complete moment vectors, lo < hi, ...) are enforced by the
// constructed objects.

/// {"nvars": n, "terms": [{"exp": [e1, ..., en], "coef": c}, ...]}
json to_json(const Polynomial& p);
Polynomial polynomial_from_json(const json& j);

/// {"nvars": n, "inequalities": [poly, ...], "box": [[lo, hi], ...]}
json to_json(const SemialgebraicSet& set);
SemialgebraicSet set_from_json(const json& j);

/// {"a": 0.5, "atoms": [{"s": [0.5], "w": 1.0}]}
json to_json(const MixtureScenario& scenario);
MixtureScenario scenario_from_json(const json& j);

/// {"nvars": n, "max_order": D, "entries": [{"exp": [...], "value": v}, ...]}
json to_json(const MomentVector& v);
MomentVector moment_vector_from_json(const json& j);

/// Debug dump of a map: {"size", "nvars", "shift_degree", "entries": [{"key", "positions": [[r, c, coef], ...]}]}
json to_json(const LinearMatrixMap& map);

json to_json(const SolverConfig& config);

/// Per-level records, conclusion, tolerances and the localizing-order convention.
json to_json(const DetectionReport& report);

struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> input_digests;  // path, sha256
  json tolerances = json::object();
  std::string localizing_convention = kLocalizingConvention;
  std::string version;
  std::vector<std::pair<std::string, double>> stage_seconds;
};

json to_json(const RunManifest& manifest);

}  // namespace lmoment::json
