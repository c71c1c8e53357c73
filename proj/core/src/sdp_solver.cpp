#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "detail/compiled_sdp.hpp"
#include "lmoment/errors.hpp"
#include "lmoment/sdp.hpp"

namespace lmoment {
namespace detail {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt2 = std::sqrt(2.0);

double inner(const MatrixXd& a, const MatrixXd& b) { return a.cwiseProduct(b).sum(); }

// Cholesky factors of every slack block at y; false if some block is not positive definite.
bool factor_all(const CompiledSdp& sdp, const VectorXd& y, std::vector<Eigen::LLT<MatrixXd>>& chol) {
  chol.resize(sdp.blocks.size());
  for (std::size_t b = 0; b < sdp.blocks.size(); ++b) {
    chol[b].compute(sdp.slack(b, y));
    if (chol[b].info() != Eigen::Success) return false;
    const auto& l = chol[b].matrixLLT();
    for (Index i = 0; i < l.rows(); ++i) {
      if (!(l(i, i) > 0.0) || !std::isfinite(l(i, i))) return false;
    }
  }
  return true;
}

double log_det(const std::vector<Eigen::LLT<MatrixXd>>& chol) {
  double v = 0.0;
  for (const auto& c : chol) v += 2.0 * c.matrixLLT().diagonal().array().log().sum();
  return v;
}

// L^{-1} A L^{-T}
MatrixXd whiten(const Eigen::LLT<MatrixXd>& chol, const MatrixXd& a) {
  MatrixXd w = chol.matrixL().solve(a);
  w = chol.matrixL().solve(w.transpose()).eval();
  return 0.5 * (w + w.transpose());
}

// Largest alpha with I + alpha * w >= 0.
double max_step(const MatrixXd& w) {
  const double lmin = min_eigenvalue(w);
  return lmin < 0.0 ? -1.0 / lmin : kInf;
}

// Symmetric vectorization with <svec(A), svec(B)> = <A, B>.
void svec_into(const MatrixXd& a, double* out) {
  Index k = 0;
  for (Index c = 0; c < a.cols(); ++c) {
    out[k++] = a(c, c);
    for (Index r = c + 1; r < a.rows(); ++r) out[k++] = kSqrt2 * a(r, c);
  }
}

MatrixXd smat(const double* v, Index n) {
  MatrixXd a(n, n);
  Index k = 0;
  for (Index c = 0; c < n; ++c) {
    a(c, c) = v[k++];
    for (Index r = c + 1; r < n; ++r) {
      a(r, c) = v[k++] / kSqrt2;
      a(c, r) = a(r, c);
    }
  }
  return a;
}

Index svec_size(Index n) { return n * (n + 1) / 2; }

}  // namespace

// Log-barrier path following on the dual variable y:
//   minimize f_mu(y) = cost . y / mu - sum_b log det S_b(y)
// by damped Newton steps, then mu <- sigma * mu once the Newton decrement is
// small. With W_bi = L_b^{-1} A_bi L_b^{-T} stacked as the columns of B (svec
// per block), the Newton system is B^T B dy = B^T e - cost / mu, e = svec(I).
// It is solved through a column-pivoted QR of B rather than by forming B^T B,
// and the certificate X_b = mu L^{-T} smat(e - B dy) L^{-1} is taken from Q
// directly, so sum_b <A_bi, X_b> = cost_i holds to rounding even when B^T B is
// badly conditioned. Whenever X is PSD it certifies the lower bound
// -sum_b <C_b, X_b> + constant.
IpmResult run_ipm(const CompiledSdp& sdp, const VectorXd& y0, const IpmOptions& opt) {
  const std::size_t nb = sdp.blocks.size();
  const auto m = static_cast<Index>(sdp.num_vars);

  IpmResult res;
  res.y = y0;
  res.primal_objective = -kInf;
  res.relative_gap = kInf;
  res.x.resize(nb);

  std::vector<Eigen::LLT<MatrixXd>> chol;
  if (!factor_all(sdp, res.y, chol)) {
    res.message = "starting point is not strictly feasible";
    return res;
  }
  res.dual_objective = sdp.cost.dot(res.y) + sdp.cost_constant;
  if (m == 0) {
    res.converged = true;
    res.relative_gap = 0.0;
    res.primal_objective = res.dual_objective;
    res.message = "no free variables";
    return res;
  }

  std::vector<Index> offset(nb + 1, 0);
  for (std::size_t b = 0; b < nb; ++b) offset[b + 1] = offset[b] + svec_size(sdp.blocks[b].dim());
  const Index rows = offset[nb];
  VectorXd e = VectorXd::Zero(rows);
  for (std::size_t b = 0; b < nb; ++b) {
    Index k = offset[b];
    for (Index c = 0, n = sdp.blocks[b].dim(); c < n; ++c) {
      e(k) = 1.0;
      k += n - c;
    }
  }

  MatrixXd design(rows, m);  // B
  VectorXd a(m);             // B^T e, minus the barrier gradient
  VectorXd colscale(m);
  Eigen::ColPivHouseholderQR<MatrixXd> qr;
  double delta = 0.0;  // regularization in use for the current factorization
  bool factored = false;

  auto assemble = [&]() {
    design.setZero();
    for (std::size_t b = 0; b < nb; ++b) {
      for (const auto& [i, coef] : sdp.blocks[b].coeffs) {
        const MatrixXd w = whiten(chol[b], coef);
        VectorXd col(svec_size(w.rows()));
        svec_into(w, col.data());
        design.col(static_cast<Index>(i)).segment(offset[b], col.size()) += col;
      }
    }
    a = design.transpose() * e;
    for (Index i = 0; i < m; ++i) {
      const double nrm = design.col(i).norm();
      colscale(i) = nrm > 0.0 ? 1.0 / nrm : 1.0;
    }
    // Pivoted QR of B D; if it is rank deficient, of [B D; sqrt(delta) I] with
    // delta doubling from the initial regularization.
    MatrixXd scaled = design * colscale.asDiagonal();
    qr.compute(scaled);
    delta = 0.0;
    factored = qr.rank() == m;
    for (double d = opt.regularization_initial; !factored && d <= opt.regularization_max * (1.0 + 1e-12); d *= 2.0) {
      MatrixXd aug(rows + m, m);
      aug.topRows(rows) = scaled;
      aug.bottomRows(m) = std::sqrt(d) * MatrixXd::Identity(m, m);
      qr.compute(aug);
      delta = d;
      factored = qr.rank() == m;
    }
  };

  // Solves (D B^T B D + delta I) u = rhs; returns u and v = R^{-T} P^T rhs.
  auto solve_normal = [&](const VectorXd& rhs, VectorXd& u, VectorXd& v) {
    const auto r = qr.matrixR().topLeftCorner(m, m).template triangularView<Eigen::Upper>();
    v = qr.colsPermutation().transpose() * rhs;
    r.transpose().solveInPlace(v);
    VectorXd z = v;
    r.solveInPlace(z);
    u = qr.colsPermutation() * z;
  };

  // B dy from v: the first `rows` entries of Q [v; 0].
  auto design_times_step = [&](const VectorXd& v) -> VectorXd {
    VectorXd full = VectorXd::Zero(qr.rows());
    full.head(m) = v;
    full.applyOnTheLeft(qr.householderQ());
    return full.head(rows);
  };

  auto newton_step = [&](double mu, VectorXd& step, VectorXd& bdy, double& decrement) -> bool {
    if (!factored) return false;
    const VectorXd rhs = colscale.asDiagonal() * (a - sdp.cost / mu);
    VectorXd u, v;
    solve_normal(rhs, u, v);
    step = colscale.asDiagonal() * u;
    if (!step.allFinite()) return false;
    bdy = design_times_step(v);
    decrement = v.norm();
    return true;
  };

  assemble();
  // Initial barrier weight: the mu whose gradient is smallest in the Hessian norm.
  double mu = 1.0;
  if (factored) {
    VectorXd u, v, w;
    solve_normal(colscale.asDiagonal() * sdp.cost, u, v);
    solve_normal(colscale.asDiagonal() * a, u, w);
    const double cc = v.squaredNorm();
    const double ca = v.dot(w);
    if (cc > 0.0 && ca > 0.0) mu = cc / ca;
    if (!std::isfinite(mu)) mu = 1.0;
    mu = std::clamp(mu, 1e-10, 1e10);
  }

  auto barrier = [&](const std::vector<Eigen::LLT<MatrixXd>>& c, const VectorXd& y, double mu_) {
    return sdp.cost.dot(y) / mu_ - log_det(c);
  };
  auto whitened_step = [&](const VectorXd& bdy, std::size_t b) { return smat(bdy.data() + offset[b], sdp.blocks[b].dim()); };

  int stalled = 0;
  bool stagnant = false;  // last accepted step no longer moved f_mu at working precision
  std::vector<Eigen::LLT<MatrixXd>> trial;
  for (int it = 0;; ++it) {
    res.iterations = it;
    res.dual_objective = sdp.cost.dot(res.y) + sdp.cost_constant;
    if (opt.keep_path) res.path.emplace_back(res.dual_objective, res.y);
    if (res.dual_objective < opt.stop_below) {
      res.diverged = true;
      res.message = "objective fell below " + std::to_string(opt.stop_below);
      return res;
    }

    VectorXd dy, bdy;
    double dec = 0.0;
    if (!newton_step(mu, dy, bdy, dec)) {
      res.message = "Newton system is not positive definite after regularization";
      return res;
    }

    if (dec <= 0.5 || stagnant) {
      stagnant = false;
      // Centered: build the primal certificate.
      double cx = 0.0;
      bool psd = true;
      VectorXd ex = e - bdy;
      for (std::size_t b = 0; b < nb; ++b) {
        MatrixXd inner_x = smat(ex.data() + offset[b], sdp.blocks[b].dim());
        // Rounding leaves inner_x slightly indefinite near the optimum; a small
        // shift restores PSD and shows up honestly in the equality residual.
        const double lmin = min_eigenvalue(inner_x);
        if (lmin < -1e-6) psd = false;
        if (lmin < 0.0) inner_x.diagonal().array() -= lmin;
        // X = mu L^{-T} inner_x L^{-1}
        MatrixXd t = chol[b].matrixU().solve(inner_x);
        t = chol[b].matrixU().solve(t.transpose()).eval();
        res.x[b] = mu * 0.5 * (t + t.transpose());
        cx += inner(sdp.blocks[b].constant, res.x[b]);
      }
      // Residual relative to the size of the terms summed, as a backward error.
      VectorXd aty = VectorXd::Zero(m);
      VectorXd scale = VectorXd::Zero(m);
      for (std::size_t b = 0; b < nb; ++b) {
        const MatrixXd xabs = res.x[b].cwiseAbs();
        for (const auto& [i, coef] : sdp.blocks[b].coeffs) {
          aty(static_cast<Index>(i)) += inner(coef, res.x[b]);
          scale(static_cast<Index>(i)) += inner(coef.cwiseAbs(), xabs);
        }
      }
      res.primal_residual = (sdp.cost - aty).norm() / (1.0 + sdp.cost.norm() + scale.norm());
      const double bound = -cx + sdp.cost_constant;
      const bool valid = psd && res.primal_residual <= opt.certificate_tol;
      if (valid) res.primal_objective = std::max(res.primal_objective, bound);
      res.relative_gap = std::abs(res.dual_objective - res.primal_objective) / (1.0 + std::abs(res.dual_objective));
      if (valid && res.relative_gap <= opt.gap_tol) {
        res.converged = true;
        res.message = "converged";
        return res;
      }
      if (mu * static_cast<double>(sdp.total_dim()) / (1.0 + std::abs(res.dual_objective)) < 1e-3 * opt.gap_tol) {
        res.message = "barrier weight exhausted before the certificate closed the gap";
        return res;
      }
      mu *= opt.sigma;
      continue;
    }

    if (it >= opt.max_iterations) {
      res.message = "iteration limit reached";
      return res;
    }

    // Line search along the Newton direction: backtrack from min(1, boundary)
    // on f_mu; when the full step is accepted and the boundary is far, keep
    // doubling while f_mu decreases (long valleys far from the center).
    double boundary = kInf;
    for (std::size_t b = 0; b < nb; ++b) boundary = std::min(boundary, max_step(whitened_step(bdy, b)));
    const double alpha_cap = opt.step_fraction * boundary;
    double alpha = std::min(1.0, alpha_cap);
    const double f0 = barrier(chol, res.y, mu);
    const double slope = -dec * dec;
    bool accepted = false;
    VectorXd y_new;
    double f_new = kInf;
    for (int tries = 0; tries < 40; ++tries) {
      y_new = res.y + alpha * dy;
      if (factor_all(sdp, y_new, trial)) {
        f_new = barrier(trial, y_new, mu);
        if (f_new <= f0 + 1e-4 * alpha * slope) {
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (accepted && alpha == 1.0) {
      std::vector<Eigen::LLT<MatrixXd>> longer;
      while (2.0 * alpha <= alpha_cap && 2.0 * alpha <= 1e8) {
        const VectorXd y_long = res.y + 2.0 * alpha * dy;
        if (!factor_all(sdp, y_long, longer)) break;
        const double f_long = barrier(longer, y_long, mu);
        if (!(f_long < f_new)) break;
        alpha *= 2.0;
        y_new = y_long;
        f_new = f_long;
        trial.swap(longer);
      }
    }
    if (!accepted) {
      // No decrease at machine precision: treat as centered enough and shrink mu.
      if (++stalled >= 5) {
        res.message = "line search stalled";
        return res;
      }
      mu *= opt.sigma;
      continue;
    }
    stalled = 0;
    stagnant = f0 - f_new <= 1e-12 * std::max(1.0, std::abs(f0));
    res.y = y_new;
    chol.swap(trial);
    assemble();
  }
}

}  // namespace detail

namespace {

std::map<MultiIndex, double> to_assignment(const SdpProblem& problem, const Eigen::VectorXd& y) {
  std::map<MultiIndex, double> out;
  for (std::size_t i = 0; i < problem.variables.size(); ++i) out.emplace(problem.variables[i], y(static_cast<Eigen::Index>(i)));
  return out;
}

detail::IpmOptions ipm_options(const SolverConfig& config) {
  detail::IpmOptions o;
  o.sigma = config.barrier_reduction;
  o.step_fraction = config.step_fraction;
  o.max_iterations = config.max_iterations;
  o.gap_tol = config.gap_tol;
  o.certificate_tol = config.certificate_tol;
  o.regularization_initial = config.regularization_initial;
  o.regularization_max = config.regularization_max;
  return o;
}

}  // namespace

Phase1Result phase1(const SdpProblem& problem, const SolverConfig& config) {
  config.validate();
  const detail::CompiledSdp base = detail::compile(problem);
  Phase1Result out;

  if (base.blocks.empty()) {
    out.margin = -std::numeric_limits<double>::infinity();
    out.lower_bound = out.margin;
    out.converged = true;
    out.unbounded_below = true;
    for (const auto& key : problem.variables) out.assignment.emplace(key, 0.0);
    out.message = "no constraint blocks";
    return out;
  }

  // Largest eigenvalue of -Block_b(0) over all blocks.
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& block : base.blocks) worst = std::max(worst, -detail::min_eigenvalue(block.constant));

  if (base.num_vars == 0) {
    out.margin = worst;
    out.lower_bound = worst;
    out.converged = true;
    out.message = "all variables fixed; margin from direct eigendecomposition";
    return out;
  }

  detail::CompiledSdp aug = detail::with_margin_variable(base);
  // Scale cap: sum_b tr(Block_b(z)) <= R. Without it the infimum is typically
  // approached only as some free moments go to infinity (the dual face then has
  // no interior and path following stalls).
  const std::size_t nblocks = problem.blocks.size();
  double trace0 = 0.0, dims = 0.0;
  detail::CompiledBlock cap;
  cap.label = "phase-1 trace cap";
  std::vector<double> trace_coef(base.num_vars, 0.0);
  for (std::size_t b = 0; b < nblocks; ++b) {
    trace0 += base.blocks[b].constant.trace();
    dims += static_cast<double>(base.blocks[b].dim());
    for (const auto& [i, a] : base.blocks[b].coeffs) trace_coef[i] += a.trace();
  }
  const double cap_value = std::max(config.divergence_bound * dims, 2.0 * std::abs(trace0) + 1.0);
  cap.constant = Eigen::MatrixXd::Constant(1, 1, cap_value - trace0);
  for (std::size_t i = 0; i < base.num_vars; ++i) {
    if (trace_coef[i] != 0.0) cap.coeffs.emplace_back(i, Eigen::MatrixXd::Constant(1, 1, -trace_coef[i]));
  }
  if (!cap.coeffs.empty()) aug.blocks.push_back(std::move(cap));
  out.trace_cap = cap_value;

  Eigen::VectorXd y0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(aug.num_vars));
  y0(static_cast<Eigen::Index>(base.num_vars)) = std::max(1.0, 1.1 * worst);

  detail::IpmOptions opt = ipm_options(config);
  opt.stop_below = -config.divergence_bound;
  opt.keep_path = true;
  const detail::IpmResult r = detail::run_ipm(aug, y0, opt);

  out.margin = r.dual_objective;
  out.iterations = r.iterations;
  out.converged = r.converged;
  out.unbounded_below = r.diverged;
  out.message = r.message;
  if (r.primal_residual <= config.certificate_tol) out.lower_bound = r.primal_objective;
  out.assignment = to_assignment(problem, r.y.head(static_cast<Eigen::Index>(base.num_vars)));
  out.interior_point = out.assignment;
  if (r.dual_objective < 0.0) {
    for (const auto& [t, y] : r.path) {
      if (t <= 0.5 * r.dual_objective) {
        out.interior_point = to_assignment(problem, y.head(static_cast<Eigen::Index>(base.num_vars)));
        break;
      }
    }
  }
  return out;
}

SolveOutcome solve(const SdpProblem& problem, const SolverConfig& config) {
  config.validate();
  SolveOutcome out;
  const Phase1Result p1 = phase1(problem, config);
  out.phase1_margin = p1.margin;
  out.phase1_trace_cap = p1.trace_cap;
  out.phase1_iterations = p1.iterations;
  out.assignment = p1.assignment;

  const double eps = config.infeas_threshold;
  const bool strictly_feasible = p1.unbounded_below || p1.margin < -eps;
  if (!strictly_feasible) {
    if (p1.margin > eps && (p1.converged || p1.lower_bound > eps)) {
      out.status = SolveStatus::Infeasible;
      std::ostringstream os;
      os << "phase-1 margin " << p1.margin << " exceeds " << eps << " within total block trace <= " << p1.trace_cap;
      out.reason = os.str();
    } else if (p1.margin > eps) {
      out.status = SolveStatus::Indeterminate;
      out.reason = "phase 1 did not certify its margin: " + p1.message;
    } else {
      out.status = SolveStatus::Indeterminate;
      out.reason = "marginal: |t*| <= " + std::to_string(eps);
    }
    return out;
  }

  const detail::CompiledSdp base = detail::compile(problem);
  if (base.num_vars == 0) {
    const auto rep = residuals(problem, {});
    out.status = SolveStatus::Feasible;
    out.objective = rep.objective;
    out.min_block_eigenvalue = rep.min_eigenvalue;
    out.relative_gap = 0.0;
    return out;
  }

  Eigen::VectorXd y0(static_cast<Eigen::Index>(base.num_vars));
  for (std::size_t i = 0; i < problem.variables.size(); ++i) y0(static_cast<Eigen::Index>(i)) = p1.interior_point.at(problem.variables[i]);

  detail::IpmOptions opt = ipm_options(config);
  opt.stop_below = -config.divergence_bound;
  const detail::IpmResult r = detail::run_ipm(base, y0, opt);
  out.phase2_iterations = r.iterations;
  out.relative_gap = r.relative_gap;
  out.assignment = to_assignment(problem, r.y);
  out.objective = r.dual_objective;

  if (r.diverged) {
    out.status = SolveStatus::Indeterminate;
    out.diverged = true;
    out.reason = "phase 2 diverged: " + r.message;
    return out;
  }
  // relative_gap only ever uses certificates that passed the PSD and residual checks.
  const bool accurate = r.converged || r.relative_gap <= 1e-6;
  if (!accurate) {
    out.status = SolveStatus::Indeterminate;
    out.reason = "phase 2: " + r.message;
    return out;
  }
  const auto rep = residuals(problem, out.assignment);
  out.min_block_eigenvalue = rep.min_eigenvalue;
  if (rep.min_eigenvalue < -config.feas_tol) {
    out.status = SolveStatus::Indeterminate;
    out.reason = "phase-2 point violates a block by " + std::to_string(-rep.min_eigenvalue);
    return out;
  }
  out.status = SolveStatus::Feasible;
  return out;
}

}  // namespace lmoment
