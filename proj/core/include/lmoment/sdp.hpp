#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lmoment/moment_matrix.hpp"
#include "lmoment/multi_index.hpp"

namespace lmoment {

/// One PSD constraint: T * instantiate(map, z) * T^T >= 0. An empty
/// congruence means T = I. The congruence never changes which z are
/// feasible; it only fixes the coordinates in which the phase-1 margin and
/// the solver's eigenvalues are measured.
struct SdpBlock {
  std::string label;
  LinearMatrixMap map;
  Eigen::MatrixXd congruence;

  std::size_t size() const noexcept { return map.size(); }
};

/// minimize sum_key objective[key] * z_key
/// subject to every block PSD, z_key = fixed[key], and z_key <= upper_bounds[key].
/// Fixed keys are substituted into constant block offsets; they are never solved for.
struct SdpProblem {
  std::vector<MultiIndex> variables;
  std::vector<SdpBlock> blocks;
  std::map<MultiIndex, double> fixed;
  std::map<MultiIndex, double> objective;
  std::map<MultiIndex, double> upper_bounds;

  /// Throws ValidationError when a key is both free and fixed, a referenced key
  /// is neither, or a congruence has the wrong shape.
  void validate() const;

  /// Value of the objective at a full assignment of the free variables.
  double objective_value(const std::map<MultiIndex, double>& assignment) const;
};

struct SolverConfig {
  double feas_tol = 1e-8;
  double infeas_threshold = 1e-6;
  double barrier_reduction = 0.2;  // centering parameter sigma
  int max_iterations = 200;
  double step_fraction = 0.98;
  double gap_tol = 1e-9;                  // relative duality gap for convergence
  double certificate_tol = 1e-7;          // relative equality residual accepted in a dual certificate
  double divergence_bound = 1e6;          // |objective| beyond this is reported as divergence
  double regularization_initial = 1e-12;  // Newton system +delta I, doubled on failure
  double regularization_max = 1e-6;

  /// Throws ValidationError on out-of-range parameters.
  void validate() const;
};

enum class SolveStatus { Feasible, Infeasible, Indeterminate };

const char* to_string(SolveStatus status) noexcept;

struct Phase1Result {
  double margin = std::numeric_limits<double>::quiet_NaN();  // t*, attained by `assignment`
  /// Certified lower bound on t* from the dual iterate (-inf when unavailable).
  double lower_bound = -std::numeric_limits<double>::infinity();
  /// Phase 1 searches sum_b tr(Block_b(z)) <= trace_cap, with
  /// trace_cap = max(divergence_bound * total block dimension, 2 |sum_b tr(Block_b(0))| + 1).
  double trace_cap = std::numeric_limits<double>::infinity();
  std::map<MultiIndex, double> assignment;
  /// Earliest iterate with t <= margin / 2 when margin < 0; a well-centred start for phase 2.
  std::map<MultiIndex, double> interior_point;
  int iterations = 0;
  bool converged = false;
  /// Phase 1 stopped early because t fell below -divergence_bound.
  bool unbounded_below = false;
  std::string message;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Indeterminate;
  /// Optimal point when Feasible, phase-1 minimizer otherwise.
  std::map<MultiIndex, double> assignment;
  double objective = std::numeric_limits<double>::quiet_NaN();
  double min_block_eigenvalue = std::numeric_limits<double>::quiet_NaN();
  double phase1_margin = std::numeric_limits<double>::quiet_NaN();
  /// Trace cap of the phase-1 search; Infeasible means no solution within it.
  double phase1_trace_cap = std::numeric_limits<double>::infinity();
  double relative_gap = std::numeric_limits<double>::quiet_NaN();
  int phase1_iterations = 0;
  int phase2_iterations = 0;
  /// Phase-2 objective ran past -divergence_bound (problem unbounded below).
  bool diverged = false;
  std::string reason;
};

/// min t subject to every (preconditioned) block + t I >= 0 and the trace cap
/// (see Phase1Result::trace_cap). Bound constraints are not part of the trace.
Phase1Result phase1(const SdpProblem& problem, const SolverConfig& config = {});

/// Phase 1, then, on strict feasibility, barrier minimization of the objective.
SolveOutcome solve(const SdpProblem& problem, const SolverConfig& config = {});

struct BlockResidual {
  std::string label;
  double min_eigenvalue = 0.0;         // of instantiate(map, z)
  double min_scaled_eigenvalue = 0.0;  // of T instantiate(map, z) T^T
};

struct ResidualReport {
  std::vector<BlockResidual> blocks;
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  double min_scaled_eigenvalue = std::numeric_limits<double>::infinity();
  double objective = 0.0;
};

/// Independent check of an assignment: instantiates every block from the
/// problem data alone and computes symmetric eigenvalues. Upper bounds are
/// reported as 1x1 blocks c - z.
ResidualReport residuals(const SdpProblem& problem, const std::map<MultiIndex, double>& assignment);

/// Writes the versioned conic text format documented in docs/conic_format.md.
void write_conic(std::ostream& os, const SdpProblem& problem);

/// Parses the format written by write_conic; throws ValidationError on malformed input.
SdpProblem read_conic(std::istream& is);

}  // namespace lmoment
