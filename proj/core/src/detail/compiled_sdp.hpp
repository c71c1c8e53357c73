#pragma once

// Dense standard form used by the interior-point engine:
//   minimize cost . y + cost_constant
//   subject to S_b(y) = constant_b + sum_i y_i coeffs_b[i] >= 0 for every block b.

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lmoment/sdp.hpp"

namespace lmoment::detail {

struct CompiledBlock {
  std::string label;
  Eigen::MatrixXd constant;
  std::vector<std::pair<std::size_t, Eigen::MatrixXd>> coeffs;  // (variable, coefficient matrix)

  Eigen::Index dim() const { return constant.rows(); }
};

struct CompiledSdp {
  std::size_t num_vars = 0;
  std::vector<CompiledBlock> blocks;
  Eigen::VectorXd cost;
  double cost_constant = 0.0;

  Eigen::MatrixXd slack(std::size_t b, const Eigen::VectorXd& y) const;
  std::size_t total_dim() const;
};

CompiledSdp compile(const SdpProblem& problem);

/// Adds a variable with coefficient I in every block; used for the phase-1 margin.
CompiledSdp with_margin_variable(const CompiledSdp& base);

struct IpmResult {
  Eigen::VectorXd y;
  std::vector<Eigen::MatrixXd> x;
  double dual_objective = 0.0;  // cost . y + constant, attained by y
  /// Best certified lower bound -sum <C_b, X_b> + constant (-inf if none yet).
  double primal_objective = -std::numeric_limits<double>::infinity();
  double primal_residual = 0.0;  // relative ||c - A^T X|| of the last certificate
  double relative_gap = 0.0;
  /// Iterates in order, kept only when IpmOptions::keep_path is set.
  std::vector<std::pair<double, Eigen::VectorXd>> path;
  int iterations = 0;
  bool converged = false;
  bool diverged = false;
  std::string message;
};

struct IpmOptions {
  double sigma = 0.2;  // barrier weight reduction per centering
  double step_fraction = 0.98;
  int max_iterations = 200;
  double gap_tol = 1e-9;
  double certificate_tol = 1e-7;
  double regularization_initial = 1e-12;
  double regularization_max = 1e-6;
  /// Stop as soon as the dual objective drops below this value.
  double stop_below = -std::numeric_limits<double>::infinity();
  bool keep_path = false;
};

/// Log-barrier path following from a strictly feasible y0 (see sdp_solver.cpp).
IpmResult run_ipm(const CompiledSdp& sdp, const Eigen::VectorXd& y0, const IpmOptions& options);

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const Eigen::MatrixXd& m);

}  // namespace lmoment::detail
