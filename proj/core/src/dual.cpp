#include <cmath>
#include <map>

#include "detail/level_inputs.hpp"
#include "lmoment/errors.hpp"
#include "lmoment/hierarchy.hpp"
#include "lmoment/moment_matrix.hpp"

namespace lmoment {
namespace {

struct GramBlock {
  std::string label;
  LinearMatrixMap map;     // coefficient of each monomial in sigma (times g_j)
  std::size_t offset = 0;  // first coordinate in the stacked svec
};

// Coordinate of (r, c), r <= c, inside the upper-triangle packing of an s x s matrix.
std::size_t packed(std::size_t r, std::size_t c, std::size_t s) { return r * s - r * (r - 1) / 2 + (c - r); }

}  // namespace

SdpProblem assemble_dual(const SemialgebraicSet& set, const MomentVector& gamma, const MomentVector& y, int d) {
  detail::check_level_inputs(set, gamma, y, d);
  const std::size_t n = set.nvars();

  std::vector<GramBlock> grams;
  std::size_t dim = 0;
  auto push = [&](std::string label, LinearMatrixMap map) {
    const std::size_t s = map.size();
    grams.push_back({std::move(label), std::move(map), dim});
    dim += s * (s + 1) / 2;
  };
  push("sigma_0", moment_map(n + 1, d));
  for (std::size_t j = 0; j < set.inequalities().size(); ++j) {
    const Polynomial& g = set.inequalities()[j];
    const int order = d - (g.degree() + 1) / 2;
    if (order < 0) continue;
    push("sigma_" + std::to_string(j + 1), localizing_map(g.lifted(1), order));
  }

  // One row per monomial (alpha, k) of degree <= 2d: the coefficient of that
  // monomial in sigma_0 + sum_j sigma_j g_j as a linear form in the packed Gram entries.
  const auto monomials = enumerate_indices(n + 1, 2 * d);
  std::map<MultiIndex, Eigen::Index> row_of;
  for (std::size_t i = 0; i < monomials.size(); ++i) row_of.emplace(monomials[i], static_cast<Eigen::Index>(i));
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(monomials.size()), static_cast<Eigen::Index>(dim));
  for (const auto& gb : grams) {
    for (const auto& [key, list] : gb.map.entries()) {
      const Eigen::Index row = row_of.at(key);
      for (const auto& e : list) {
        const double mult = e.row == e.col ? 1.0 : 2.0;
        a(row, static_cast<Eigen::Index>(gb.offset + packed(e.row, e.col, gb.map.size()))) += mult * e.coef;
      }
    }
  }

  // Left-hand side: sum of the squared basis monomials of order d.
  Eigen::VectorXd trace_poly = Eigen::VectorXd::Zero(a.rows());
  for (const auto& idx : enumerate_indices(n + 1, d)) trace_poly(row_of.at(idx.scaled(2))) += 1.0;

  // X_part = (I, 0, ..., 0) matches every coefficient of the left-hand side
  // with p = q = 0.
  Eigen::VectorXd x_part = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < grams[0].map.size(); ++r) x_part(static_cast<Eigen::Index>(packed(r, r, grams[0].map.size()))) = 1.0;

  std::vector<Eigen::Index> eq_rows;
  Eigen::VectorXd objective_form = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  double objective_constant = 0.0;
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    const MultiIndex& key = monomials[i];
    const auto row = static_cast<Eigen::Index>(i);
    const int k = key.back();
    if (k >= 2) {
      eq_rows.push_back(row);
      continue;
    }
    // p_alpha (k = 0) or q_alpha (k = 1) equals trace_poly - A(X) at this monomial;
    // the objective weight is gamma_alpha or y_alpha. Minimize its negation.
    const double w = k == 0 ? gamma.at(key.head(n)) : y.at(key.head(n));
    objective_constant -= w * trace_poly(row);
    objective_form += w * a.row(row).transpose();
  }

  Eigen::MatrixXd eq(static_cast<Eigen::Index>(eq_rows.size()), a.cols());
  for (std::size_t i = 0; i < eq_rows.size(); ++i) eq.row(static_cast<Eigen::Index>(i)) = a.row(eq_rows[i]);

  Eigen::MatrixXd basis;
  if (eq.rows() == 0) {
    basis = Eigen::MatrixXd::Identity(a.cols(), a.cols());
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(eq, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double tol = std::max(eq.rows(), eq.cols()) * 1e-12 * (sv.size() ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > tol) ++rank;
    basis = svd.matrixV().rightCols(a.cols() - rank);
  }
  const auto nu = static_cast<std::size_t>(basis.cols());

  SdpProblem p;
  const MultiIndex one{0};
  p.fixed.emplace(one, 1.0);
  for (std::size_t i = 0; i < nu; ++i) p.variables.push_back(MultiIndex{static_cast<int>(i + 1)});

  for (const auto& gb : grams) {
    const std::size_t s = gb.map.size();
    LinearMatrixMap map(s, 1);
    for (std::size_t r = 0; r < s; ++r) {
      for (std::size_t c = r; c < s; ++c) {
        const auto coord = static_cast<Eigen::Index>(gb.offset + packed(r, c, s));
        if (x_part(coord) != 0.0) map.add(one, r, c, x_part(coord));
        for (std::size_t i = 0; i < nu; ++i) {
          const double v = basis(coord, static_cast<Eigen::Index>(i));
          if (v != 0.0) map.add(MultiIndex{static_cast<int>(i + 1)}, r, c, v);
        }
      }
    }
    p.blocks.push_back({gb.label, std::move(map), {}});
  }

  p.objective[one] = objective_constant + objective_form.dot(x_part);
  const Eigen::VectorXd reduced = basis.transpose() * objective_form;
  for (std::size_t i = 0; i < nu; ++i) {
    const double v = reduced(static_cast<Eigen::Index>(i));
    if (v != 0.0) p.objective[MultiIndex{static_cast<int>(i + 1)}] = v;
  }
  p.validate();
  return p;
}

double dual_value(const SolveOutcome& outcome) { return -outcome.objective; }

}  // namespace lmoment
