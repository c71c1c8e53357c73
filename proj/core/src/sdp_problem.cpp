#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "detail/compiled_sdp.hpp"
#include "lmoment/errors.hpp"
#include "lmoment/sdp.hpp"

namespace lmoment {

const char* to_string(SolveStatus status) noexcept {
  switch (status) {
    case SolveStatus::Feasible: return "Feasible";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Indeterminate: return "Indeterminate";
  }
  return "Unknown";
}

void SolverConfig::validate() const {
  if (!(infeas_threshold > 0.0)) throw ValidationError("infeas_threshold must be positive");
  if (!(feas_tol > 0.0)) throw ValidationError("feas_tol must be positive");
  if (!(barrier_reduction > 0.0 && barrier_reduction < 1.0)) throw ValidationError("barrier_reduction must lie in (0,1)");
  if (!(step_fraction > 0.0 && step_fraction < 1.0)) throw ValidationError("step_fraction must lie in (0,1)");
  if (!(gap_tol > 0.0)) throw ValidationError("gap_tol must be positive");
  if (!(certificate_tol > 0.0)) throw ValidationError("certificate_tol must be positive");
  if (!(divergence_bound > 0.0)) throw ValidationError("divergence_bound must be positive");
  if (max_iterations < 1) throw ValidationError("max_iterations must be >= 1");
  if (!(regularization_initial > 0.0 && regularization_initial <= regularization_max)) {
    throw ValidationError("regularization bounds are inconsistent");
  }
}

void SdpProblem::validate() const {
  std::set<MultiIndex> free(variables.begin(), variables.end());
  if (free.size() != variables.size()) throw ValidationError("duplicate free variable");
  for (const auto& [key, v] : fixed) {
    if (free.contains(key)) throw ValidationError("key " + key.to_string() + " is both free and fixed");
    if (!std::isfinite(v)) throw ValidationError("fixed value of " + key.to_string() + " is not finite");
  }
  auto known = [&](const MultiIndex& key) { return free.contains(key) || fixed.contains(key); };
  for (const auto& block : blocks) {
    for (const auto& [key, list] : block.map.entries()) {
      if (!known(key)) throw ValidationError("block '" + block.label + "' references unknown key " + key.to_string());
    }
    const auto n = static_cast<Eigen::Index>(block.size());
    if (block.congruence.size() != 0 && (block.congruence.rows() != n || block.congruence.cols() != n)) {
      throw ValidationError("block '" + block.label + "' has a congruence of the wrong shape");
    }
  }
  for (const auto& [key, c] : objective) {
    if (!known(key)) throw ValidationError("objective references unknown key " + key.to_string());
    (void)c;
  }
  for (const auto& [key, c] : upper_bounds) {
    if (!known(key)) throw ValidationError("upper bound references unknown key " + key.to_string());
    (void)c;
  }
}

double SdpProblem::objective_value(const std::map<MultiIndex, double>& assignment) const {
  double v = 0.0;
  for (const auto& [key, c] : objective) {
    if (auto it = fixed.find(key); it != fixed.end()) {
      v += c * it->second;
    } else if (auto jt = assignment.find(key); jt != assignment.end()) {
      v += c * jt->second;
    } else {
      throw IncompleteDataError("assignment lacks variable " + key.to_string(), {key.to_string()});
    }
  }
  return v;
}

namespace {

Eigen::MatrixXd apply_congruence(const Eigen::MatrixXd& t, const Eigen::MatrixXd& m) {
  if (t.size() == 0) return m;
  return t * m * t.transpose();
}

}  // namespace

ResidualReport residuals(const SdpProblem& problem, const std::map<MultiIndex, double>& assignment) {
  std::map<MultiIndex, double> z = problem.fixed;
  for (const auto& key : problem.variables) {
    auto it = assignment.find(key);
    if (it == assignment.end()) throw IncompleteDataError("assignment lacks variable " + key.to_string(), {key.to_string()});
    z[key] = it->second;
  }
  ResidualReport report;
  for (const auto& block : problem.blocks) {
    const Eigen::MatrixXd m = instantiate(block.map, z);
    BlockResidual r{block.label, detail::min_eigenvalue(m), detail::min_eigenvalue(apply_congruence(block.congruence, m))};
    report.min_eigenvalue = std::min(report.min_eigenvalue, r.min_eigenvalue);
    report.min_scaled_eigenvalue = std::min(report.min_scaled_eigenvalue, r.min_scaled_eigenvalue);
    report.blocks.push_back(std::move(r));
  }
  for (const auto& [key, c] : problem.upper_bounds) {
    const double slack = c - z.at(key);
    report.blocks.push_back({"bound " + key.to_string(), slack, slack});
    report.min_eigenvalue = std::min(report.min_eigenvalue, slack);
    report.min_scaled_eigenvalue = std::min(report.min_scaled_eigenvalue, slack);
  }
  report.objective = problem.objective_value(z);
  return report;
}

namespace detail {

double min_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.rows() == 1) return m(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

Eigen::MatrixXd CompiledSdp::slack(std::size_t b, const Eigen::VectorXd& y) const {
  const auto& block = blocks[b];
  Eigen::MatrixXd s = block.constant;
  for (const auto& [i, a] : block.coeffs) s.noalias() += y(static_cast<Eigen::Index>(i)) * a;
  return s;
}

std::size_t CompiledSdp::total_dim() const {
  std::size_t n = 0;
  for (const auto& b : blocks) n += static_cast<std::size_t>(b.dim());
  return n;
}

CompiledSdp compile(const SdpProblem& problem) {
  problem.validate();
  CompiledSdp out;
  out.num_vars = problem.variables.size();
  std::map<MultiIndex, std::size_t> var_index;
  for (std::size_t i = 0; i < problem.variables.size(); ++i) var_index.emplace(problem.variables[i], i);

  for (const auto& block : problem.blocks) {
    CompiledBlock cb;
    cb.label = block.label;
    std::map<std::size_t, Eigen::MatrixXd> per_var;
    Eigen::MatrixXd constant = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(block.size()),
                                                     static_cast<Eigen::Index>(block.size()));
    for (const auto& [key, list] : block.map.entries()) {
      (void)list;
      const Eigen::MatrixXd coef = block.map.coefficient_matrix(key);
      if (auto f = problem.fixed.find(key); f != problem.fixed.end()) {
        constant += f->second * coef;
      } else {
        auto [it, inserted] = per_var.try_emplace(var_index.at(key), coef);
        if (!inserted) it->second += coef;
      }
    }
    cb.constant = apply_congruence(block.congruence, constant);
    for (auto& [i, a] : per_var) cb.coeffs.emplace_back(i, apply_congruence(block.congruence, a));
    out.blocks.push_back(std::move(cb));
  }

  for (const auto& [key, c] : problem.upper_bounds) {
    CompiledBlock cb;
    cb.label = "bound " + key.to_string();
    if (auto f = problem.fixed.find(key); f != problem.fixed.end()) {
      cb.constant = Eigen::MatrixXd::Constant(1, 1, c - f->second);
    } else {
      cb.constant = Eigen::MatrixXd::Constant(1, 1, c);
      cb.coeffs.emplace_back(var_index.at(key), Eigen::MatrixXd::Constant(1, 1, -1.0));
    }
    out.blocks.push_back(std::move(cb));
  }

  out.cost = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(out.num_vars));
  for (const auto& [key, c] : problem.objective) {
    if (auto f = problem.fixed.find(key); f != problem.fixed.end()) {
      out.cost_constant += c * f->second;
    } else {
      out.cost(static_cast<Eigen::Index>(var_index.at(key))) += c;
    }
  }
  return out;
}

CompiledSdp with_margin_variable(const CompiledSdp& base) {
  CompiledSdp out = base;
  const std::size_t t = base.num_vars;
  out.num_vars = base.num_vars + 1;
  for (auto& block : out.blocks) block.coeffs.emplace_back(t, Eigen::MatrixXd::Identity(block.dim(), block.dim()));
  out.cost = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(out.num_vars));
  out.cost(static_cast<Eigen::Index>(t)) = 1.0;
  out.cost_constant = 0.0;
  return out;
}

}  // namespace detail
}  // namespace lmoment
