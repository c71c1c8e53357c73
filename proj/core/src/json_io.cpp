#include "lmoment/json_io.hpp"

#include <cmath>

#include "lmoment/errors.hpp"
#include "lmoment/version.hpp"

namespace lmoment::json {
namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ValidationError(std::string("JSON: missing field '") + name + "'");
  return j.at(name);
}

template <class T>
T get(const json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("JSON: field '") + name + "' has the wrong type: " + e.what());
  }
}

MultiIndex index_from(const json& j, std::size_t nvars) {
  std::vector<int> exps;
  try {
    exps = j.get<std::vector<int>>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError("JSON: exponent must be an array of integers");
  }
  if (exps.size() != nvars) throw ValidationError("JSON: exponent " + j.dump() + " does not have " + std::to_string(nvars) + " entries");
  for (int e : exps) {
    if (e < 0) throw ValidationError("JSON: negative exponent in " + j.dump());
  }
  return MultiIndex(std::move(exps));
}

json exps(const MultiIndex& idx) { return json(std::vector<int>(idx.exponents().begin(), idx.exponents().end())); }

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [idx, c] : p.terms()) terms.push_back({{"exp", exps(idx)}, {"coef", c}});
  return {{"nvars", p.nvars()}, {"terms", terms}};
}

Polynomial polynomial_from_json(const json& j) {
  const auto nvars = get<std::size_t>(j, "nvars");
  if (nvars == 0) throw ValidationError("JSON: polynomial needs nvars >= 1");
  Polynomial p(nvars);
  for (const auto& t : field(j, "terms")) p.add_term(index_from(field(t, "exp"), nvars), get<double>(t, "coef"));
  return p;
}

json to_json(const SemialgebraicSet& set) {
  json ineq = json::array();
  for (const auto& g : set.inequalities()) ineq.push_back(to_json(g));
  json box = json::array();
  for (const auto& iv : set.box()) box.push_back({iv.lo, iv.hi});
  return {{"nvars", set.nvars()}, {"inequalities", ineq}, {"box", box}};
}

SemialgebraicSet set_from_json(const json& j) {
  const auto nvars = get<std::size_t>(j, "nvars");
  std::vector<Polynomial> ineq;
  if (j.contains("inequalities")) {
    for (const auto& g : j.at("inequalities")) ineq.push_back(polynomial_from_json(g));
  }
  Box box;
  for (const auto& iv : field(j, "box")) {
    if (!iv.is_array() || iv.size() != 2) throw ValidationError("JSON: box entries must be [lo, hi]");
    box.push_back({iv[0].get<double>(), iv[1].get<double>()});
  }
  try {
    return SemialgebraicSet(nvars, std::move(ineq), std::move(box));
  } catch (const ArgumentError& e) {
    throw ValidationError(std::string("JSON: invalid set: ") + e.what());
  }
}

json to_json(const MixtureScenario& scenario) {
  json atoms = json::array();
  for (const auto& a : scenario.atoms) atoms.push_back({{"s", a.location}, {"w", a.weight}});
  return {{"a", scenario.a}, {"atoms", atoms}};
}

MixtureScenario scenario_from_json(const json& j) {
  MixtureScenario s;
  s.a = get<double>(j, "a");
  if (j.contains("atoms")) {
    for (const auto& a : j.at("atoms")) s.atoms.push_back({get<std::vector<double>>(a, "s"), get<double>(a, "w")});
  }
  return s;
}

json to_json(const MomentVector& v) {
  json entries = json::array();
  for (const auto& idx : enumerate_indices(v.nvars(), v.max_order())) {
    entries.push_back({{"exp", exps(idx)}, {"value", v.at(idx)}});
  }
  return {{"nvars", v.nvars()}, {"max_order", v.max_order()}, {"entries", entries}};
}

MomentVector moment_vector_from_json(const json& j) {
  const auto nvars = get<std::size_t>(j, "nvars");
  const auto max_order = get<int>(j, "max_order");
  if (nvars == 0) throw ValidationError("JSON: moment vector needs nvars >= 1");
  MomentVector::EntryMap entries;
  for (const auto& e : field(j, "entries")) {
    const MultiIndex idx = index_from(field(e, "exp"), nvars);
    if (!entries.emplace(idx, get<double>(e, "value")).second) {
      throw ValidationError("JSON: duplicate moment " + idx.to_string());
    }
  }
  const auto zero = entries.find(MultiIndex::zero(nvars));
  const bool probability = zero != entries.end() && zero->second == 1.0;
  return MomentVector(nvars, max_order, std::move(entries), probability);
}

json to_json(const LinearMatrixMap& map) {
  json entries = json::array();
  for (const auto& [key, list] : map.entries()) {
    json pos = json::array();
    for (const auto& e : list) pos.push_back({e.row, e.col, e.coef});
    entries.push_back({{"key", exps(key)}, {"positions", pos}});
  }
  return {{"size", map.size()}, {"nvars", map.nvars()}, {"shift_degree", map.shift_degree()}, {"entries", entries}};
}

json to_json(const SolverConfig& c) {
  return {{"feas_tol", c.feas_tol},
          {"infeas_threshold", c.infeas_threshold},
          {"barrier_reduction", c.barrier_reduction},
          {"max_iterations", c.max_iterations},
          {"step_fraction", c.step_fraction},
          {"gap_tol", c.gap_tol},
          {"certificate_tol", c.certificate_tol},
          {"divergence_bound", c.divergence_bound},
          {"regularization_initial", c.regularization_initial},
          {"regularization_max", c.regularization_max}};
}

json to_json(const DetectionReport& report) {
  json levels = json::array();
  for (const auto& rec : report.levels) {
    levels.push_back({{"d", rec.d},
                      {"status", to_string(rec.status)},
                      {"rho_d", number_or_null(rec.rho)},
                      {"margin", number_or_null(rec.margin)},
                      {"trace_cap", number_or_null(rec.trace_cap)},
                      {"seconds", rec.seconds},
                      {"iterations", rec.iterations},
                      {"reason", rec.reason}});
  }
  json conclusion = {{"kind", to_string(report.conclusion.kind)}, {"level", report.conclusion.level}};
  if (report.conclusion.kind == ConclusionKind::NoDensityFrom) conclusion["p"] = report.conclusion.exponent();
  return {{"dmax", report.dmax},
          {"linf_bound", report.linf_bound ? json(*report.linf_bound) : json(nullptr)},
          {"levels", levels},
          {"conclusion", conclusion},
          {"summary", interpret(report)},
          {"monotone", report.monotone},
          {"has_indeterminate", report.has_indeterminate},
          {"tolerances", to_json(report.tolerances)},
          {"preconditioned", report.preconditioned},
          {"localizing_order", report.localizing_convention}};
}

json to_json(const RunManifest& m) {
  json digests = json::array();
  for (const auto& [path, digest] : m.input_digests) digests.push_back({{"path", path}, {"sha256", digest}});
  json stages = json::object();
  for (const auto& [name, secs] : m.stage_seconds) stages[name] = secs;
  return {{"command", m.command},
          {"inputs", digests},
          {"tolerances", m.tolerances},
          {"localizing_order", m.localizing_convention},
          {"version", m.version.empty() ? std::string(kVersion) : m.version},
          {"stage_seconds", stages}};
}

}  // namespace lmoment::json
