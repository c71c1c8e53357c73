#include "lmoment/hierarchy.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <sstream>

#include "detail/level_inputs.hpp"
#include "lmoment/errors.hpp"
#include "lmoment/moment_matrix.hpp"

namespace lmoment {
namespace {

using LongMatrix = std::vector<std::vector<long double>>;

// In-place lower Cholesky factor; false if the matrix is not positive definite.
bool cholesky(LongMatrix& a) {
  const std::size_t n = a.size();
  for (std::size_t j = 0; j < n; ++j) {
    long double d = a[j][j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j][k] * a[j][k];
    if (!(d > 0.0L)) return false;
    a[j][j] = std::sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      long double s = a[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i][k] * a[j][k];
      a[i][j] = s / a[j][j];
    }
    for (std::size_t k = j + 1; k < n; ++k) a[j][k] = 0.0L;
  }
  return true;
}

LongMatrix lower_inverse(const LongMatrix& l) {
  const std::size_t n = l.size();
  LongMatrix inv(n, std::vector<long double>(n, 0.0L));
  for (std::size_t c = 0; c < n; ++c) {
    inv[c][c] = 1.0L / l[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      long double s = 0.0L;
      for (std::size_t k = c; k < r; ++k) s += l[r][k] * inv[k][c];
      inv[r][c] = -s / l[r][r];
    }
  }
  return inv;
}

LongMatrix x_gram(const std::vector<MultiIndex>& xs, const Polynomial& g, const MomentVector& gamma) {
  LongMatrix gram(xs.size(), std::vector<long double>(xs.size(), 0.0L));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i; j < xs.size(); ++j) {
      long double v = 0.0L;
      for (const auto& [e, c] : g.terms()) v += static_cast<long double>(c) * gamma.at(xs[i] + xs[j] + e);
      gram[i][j] = gram[j][i] = v;
    }
  }
  return gram;
}

// Block-diagonal (over t-degree) congruence L^{-1}, where L L^T is the Gram of
// the x-monomials of that t-degree under g dgamma.
Eigen::MatrixXd lebesgue_congruence(const Polynomial& g, int order, const MomentVector& gamma) {
  const std::size_t n = g.nvars();
  const auto rows = enumerate_indices(n + 1, order);
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
  for (int k = 0; k <= order; ++k) {
    std::vector<std::size_t> pos;
    std::vector<MultiIndex> xs;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].back() == k) {
        pos.push_back(r);
        xs.push_back(rows[r].head(n));
      }
    }
    LongMatrix l = x_gram(xs, g, gamma);
    if (!cholesky(l)) {
      l = x_gram(xs, Polynomial::constant(n, 1.0), gamma);
      if (!cholesky(l)) {
        for (std::size_t p : pos) t(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p)) = 1.0;
        continue;
      }
    }
    const LongMatrix inv = lower_inverse(l);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        t(static_cast<Eigen::Index>(pos[i]), static_cast<Eigen::Index>(pos[j])) = static_cast<double>(inv[i][j]);
      }
    }
  }
  return t;
}

std::string selector_string(const std::vector<std::uint8_t>& beta) {
  std::string s;
  for (auto b : beta) s += b ? '1' : '0';
  return s;
}

}  // namespace

namespace detail {

void check_level_inputs(const SemialgebraicSet& set, const MomentVector& gamma, const MomentVector& y, int d) {
  if (d < 0) throw ArgumentError("hierarchy level d must be >= 0");
  const std::size_t n = set.nvars();
  if (gamma.nvars() != n || y.nvars() != n) {
    throw ValidationError("moment vectors must have " + std::to_string(n) + " variables like the set");
  }
  std::vector<std::string> missing;
  for (const auto& k : gamma.missing_up_to(2 * d)) missing.push_back("gamma" + k.to_string());
  if (d >= 1) {
    for (const auto& k : y.missing_up_to(2 * d - 1)) missing.push_back("y" + k.to_string());
  }
  if (!missing.empty()) {
    std::string what = "insufficient moments for level d=" + std::to_string(d) + ": missing";
    for (std::size_t i = 0; i < missing.size() && i < 8; ++i) what += " " + missing[i];
    if (missing.size() > 8) what += " ... (" + std::to_string(missing.size()) + " total)";
    throw IncompleteDataError(what, missing);
  }
  const MultiIndex zero = MultiIndex::zero(n);
  if (std::abs(gamma.at(zero) - 1.0) > 1e-12) throw ValidationError("gamma_0 must equal 1");
  if (d >= 1 && std::abs(y.at(zero) - 1.0) > 1e-12) throw ValidationError("y_0 must equal 1");
}

}  // namespace detail

HierarchyLevel assemble_level(const SemialgebraicSet& set, const MomentVector& gamma, const MomentVector& y, int d,
                              std::optional<double> linf_bound, bool precondition) {
  detail::check_level_inputs(set, gamma, y, d);
  const std::size_t n = set.nvars();
  HierarchyLevel level;
  level.d = d;
  SdpProblem& p = level.primal;

  for (const auto& key : enumerate_indices(n + 1, 2 * d)) {
    const int k = key.back();
    if (k == 0) {
      p.fixed.emplace(key, gamma.at(key.head(n)));
    } else if (k == 1) {
      p.fixed.emplace(key, y.at(key.head(n)));
    } else {
      p.variables.push_back(key);
    }
  }

  for (const auto& term : preordering(set)) {
    BlockInventoryEntry entry;
    entry.selector = term.selector;
    entry.order = d - term.halfdeg;
    entry.label = term.is_unit() ? "M_" + std::to_string(d)
                                 : "M_" + std::to_string(entry.order) + "(g^" + selector_string(term.selector) + ")";
    if (entry.order < 0) {
      entry.skipped = true;
      level.inventory.push_back(entry);
      continue;
    }
    SdpBlock block{entry.label,
                   term.is_unit() ? moment_map(n + 1, d) : localizing_map(term.product.lifted(1), entry.order),
                   {}};
    if (precondition) block.congruence = lebesgue_congruence(term.product, entry.order, gamma);
    p.blocks.push_back(std::move(block));
    level.inventory.push_back(entry);
  }

  for (const auto& idx : enumerate_indices(n + 1, d)) p.objective[idx.scaled(2)] += 1.0;

  if (linf_bound) {
    if (!std::isfinite(*linf_bound)) throw ArgumentError("linf bound must be finite");
    for (int k = 2; k <= 2 * d; ++k) p.upper_bounds.emplace(MultiIndex::zero(n).appended(k), *linf_bound);
  }
  p.validate();
  return level;
}

SdpProblem assemble_primal(const SemialgebraicSet& set, const MomentVector& gamma, const MomentVector& y, int d,
                           std::optional<double> linf_bound, bool precondition) {
  return assemble_level(set, gamma, y, d, linf_bound, precondition).primal;
}

void HierarchyConfig::validate() const {
  if (dmax < 1) throw ValidationError("dmax must be >= 1");
  if (threads < 1) throw ValidationError("threads must be >= 1");
  solver.validate();
}

const char* to_string(ConclusionKind kind) noexcept {
  switch (kind) {
    case ConclusionKind::NoDensityFrom: return "NoDensityFrom";
    case ConclusionKind::ConsistentUpTo: return "ConsistentUpTo";
    case ConclusionKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

LevelRecord solve_level(const SemialgebraicSet& set, const MomentVector& gamma, const MomentVector& y, int d,
                        const HierarchyConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const SdpProblem problem = assemble_primal(set, gamma, y, d, config.linf_bound, config.precondition);
  const SolveOutcome out = solve(problem, config.solver);
  LevelRecord rec;
  rec.d = d;
  rec.status = out.status;
  rec.rho = out.status == SolveStatus::Feasible ? out.objective : std::numeric_limits<double>::quiet_NaN();
  rec.margin = out.phase1_margin;
  rec.trace_cap = out.phase1_trace_cap;
  rec.iterations = out.phase1_iterations + out.phase2_iterations;
  rec.reason = out.reason;
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace

DetectionReport run_detection(const SemialgebraicSet& set, const MomentVector& gamma, const MomentVector& y,
                              const HierarchyConfig& config) {
  config.validate();
  // Fail fast on missing data for the deepest level.
  detail::check_level_inputs(set, gamma, y, config.dmax);

  DetectionReport report;
  report.dmax = config.dmax;
  report.linf_bound = config.linf_bound;
  report.tolerances = config.solver;
  report.preconditioned = config.precondition;

  if (config.run_all_levels && config.threads > 1) {
    const auto levels = static_cast<std::size_t>(config.dmax);
    // Run in waves of `threads` levels; the report is assembled in d-order.
    for (std::size_t i = 0; i < levels; i += config.threads) {
      std::vector<std::future<LevelRecord>> wave;
      for (std::size_t j = i; j < std::min(levels, i + config.threads); ++j) {
        const int d = static_cast<int>(j) + 1;
        wave.push_back(std::async(std::launch::async, [&, d] { return solve_level(set, gamma, y, d, config); }));
      }
      for (auto& f : wave) report.levels.push_back(f.get());
    }
  } else {
    for (int d = 1; d <= config.dmax; ++d) {
      report.levels.push_back(solve_level(set, gamma, y, d, config));
      if (report.levels.back().status == SolveStatus::Infeasible && !config.run_all_levels) break;
    }
  }

  bool seen_infeasible = false;
  int first_infeasible = 0;
  for (const auto& rec : report.levels) {
    if (rec.status == SolveStatus::Indeterminate) report.has_indeterminate = true;
    if (rec.status == SolveStatus::Infeasible && !seen_infeasible) {
      seen_infeasible = true;
      first_infeasible = rec.d;
    }
    if (rec.status == SolveStatus::Feasible && seen_infeasible) report.monotone = false;
  }
  if (seen_infeasible) {
    report.conclusion = {ConclusionKind::NoDensityFrom, first_infeasible};
  } else if (std::all_of(report.levels.begin(), report.levels.end(),
                         [](const LevelRecord& r) { return r.status == SolveStatus::Indeterminate; })) {
    report.conclusion = {ConclusionKind::Inconclusive, report.levels.back().d};
  } else {
    // Indeterminate levels are skipped here; has_indeterminate flags them.
    report.conclusion = {ConclusionKind::ConsistentUpTo, config.dmax};
  }
  return report;
}

std::string interpret(const DetectionReport& report) {
  std::ostringstream os;
  const Conclusion& c = report.conclusion;
  switch (c.kind) {
    case ConclusionKind::NoDensityFrom:
      if (report.linf_bound) {
        os << "level d=" << c.level << " is infeasible under the bound c=" << *report.linf_bound
           << ": no density with essential sup <= " << *report.linf_bound << " at this level (moments up to order "
           << c.exponent() << ")";
      } else {
        os << "level d=" << c.level << " is infeasible: no density in L_p(K) for any p >= " << c.exponent()
           << ", hence none in the intersection of all L_p nor in L_inf";
      }
      break;
    case ConclusionKind::ConsistentUpTo:
      os << "necessary conditions hold through order " << 2 * c.level << " (dmax=" << c.level
         << "); existence not certified";
      if (report.linf_bound) os << " (with bound c=" << *report.linf_bound << ")";
      break;
    case ConclusionKind::Inconclusive:
      os << "every level was indeterminate; nothing can be concluded";
      break;
  }
  if (report.has_indeterminate && c.kind != ConclusionKind::Inconclusive) {
    os << "\nnote: indeterminate levels were skipped:";
    for (const auto& rec : report.levels) {
      if (rec.status == SolveStatus::Indeterminate) os << " d=" << rec.d;
    }
  }
  if (!report.monotone) os << "\nwarning: a feasible level follows an infeasible one (solver tolerance issue)";
  return os.str();
}

}  // namespace lmoment
