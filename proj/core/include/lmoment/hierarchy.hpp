#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lmoment/measures.hpp"
#include "lmoment/sdp.hpp"
#include "lmoment/semialgebraic.hpp"

namespace lmoment {

/// Order convention for the localizing block of a composite product g^beta.
inline constexpr const char* kLocalizingConvention = "d - ceil(deg(g^beta)/2)";

struct BlockInventoryEntry {
  std::vector<std::uint8_t> selector;  // beta
  int order = 0;                       // d - halfdeg(g^beta); negative when skipped
  bool skipped = false;
  std::string label;
};

struct HierarchyLevel {
  int d = 0;
  SdpProblem primal;
  std::vector<BlockInventoryEntry> inventory;

  int moment_order() const noexcept { return 2 * d; }
};

/// Level-d primal: minimize trace(M_d(z)) over z on N^{n+1}_{2d} with
/// z_{alpha 0} = gamma_alpha, z_{alpha 1} = y_alpha fixed, M_d(z) >= 0 and
/// M_{d - v_beta}(g^beta z) >= 0 for every preordering term with d >= v_beta.
/// With `linf_bound` = c, adds z_{0k} <= c for 2 <= k <= 2d.
///
/// With `precondition`, each block carries a congruence that normalizes its
/// fixed x-only part against the box Lebesgue moments (see SdpBlock); the
/// feasible set is unchanged.
HierarchyLevel assemble_level(const SemialgebraicSet& set, const MomentVector& gamma, const MomentVector& y, int d,
                              std::optional<double> linf_bound = std::nullopt, bool precondition = true);

SdpProblem assemble_primal(const SemialgebraicSet& set, const MomentVector& gamma, const MomentVector& y, int d,
                           std::optional<double> linf_bound = std::nullopt, bool precondition = true);

/// Level-d dual in the Putinar form sigma_0 + sum_j sigma_j g_j:
///   maximize sum_alpha p_alpha gamma_alpha + sum_alpha q_alpha y_alpha
///   s.t. sum_{(alpha,k) in N^{n+1}_d} (x^alpha t^k)^2 - p(x) - t q(x) = sigma_0 + sum_j sigma_j g_j.
///
/// Change of variables: p and q are eliminated through the t-degree 0 and 1
/// coefficient equations. The remaining equations (t-degree >= 2) are linear
/// in the stacked Gram matrices X = (X_0, X_1, ..., X_m); X is written as
/// X_part + sum_i u_i N_i with X_part = (I, 0, ..., 0) (the identity
/// decomposition) and N_i an orthonormal basis of the null space of those
/// equations. The returned problem is over one-variable keys: key (0) is fixed
/// to 1 and carries X_part and the objective constant, key (i) holds u_{i-1}.
/// Its objective is the negated dual objective, so rho*_d = -objective.
SdpProblem assemble_dual(const SemialgebraicSet& set, const MomentVector& gamma, const MomentVector& y, int d);

/// rho*_d from a solve of assemble_dual.
double dual_value(const SolveOutcome& outcome);

struct HierarchyConfig {
  int dmax = 5;
  SolverConfig solver;
  std::optional<double> linf_bound;
  /// Keep going after the first Infeasible level (for monotonicity checks).
  bool run_all_levels = false;
  bool precondition = true;
  /// Levels solved concurrently when run_all_levels is set.
  unsigned threads = 1;

  void validate() const;
};

struct LevelRecord {
  int d = 0;
  SolveStatus status = SolveStatus::Indeterminate;
  double rho = 0.0;     // NaN unless Feasible
  double margin = 0.0;  // phase-1 t*
  double trace_cap = 0.0;  // phase-1 search region: total block trace <= trace_cap
  double seconds = 0.0;
  int iterations = 0;
  std::string reason;
};

enum class ConclusionKind { NoDensityFrom, ConsistentUpTo, Inconclusive };

const char* to_string(ConclusionKind kind) noexcept;

struct Conclusion {
  ConclusionKind kind = ConclusionKind::Inconclusive;
  /// d* for NoDensityFrom, dmax for ConsistentUpTo, the last level run otherwise.
  int level = 0;

  /// p = 2d*: the smallest exponent ruled out.
  int exponent() const noexcept { return 2 * level; }
};

struct DetectionReport {
  int dmax = 0;
  std::optional<double> linf_bound;
  SolverConfig tolerances;
  bool preconditioned = true;
  std::string localizing_convention = kLocalizingConvention;
  std::vector<LevelRecord> levels;
  Conclusion conclusion;
  /// False when a Feasible level follows an Infeasible one (a tolerance bug).
  bool monotone = true;
  bool has_indeterminate = false;
};

/// Solves levels d = 1..dmax bottom-up. Stops at the first Infeasible level
/// (conclusion NoDensityFrom(2d)) unless run_all_levels. Without any
/// Infeasible level the conclusion is ConsistentUpTo(dmax); Indeterminate
/// levels are skipped and flagged in has_indeterminate, and the conclusion is
/// Inconclusive only when every level was Indeterminate.
DetectionReport run_detection(const SemialgebraicSet& set, const MomentVector& gamma, const MomentVector& y,
                              const HierarchyConfig& config);

/// Human-readable verdict.
std::string interpret(const DetectionReport& report);

}  // namespace lmoment
