#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "lmoment/measures.hpp"
#include "lmoment/multi_index.hpp"
#include "lmoment/polynomial.hpp"

namespace lmoment {

struct MatrixEntry {
  std::size_t row = 0;
  std::size_t col = 0;  // row <= col
  double coef = 0.0;

  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Linear map from a moment sequence to a symmetric matrix, stored
/// structurally as key -> upper-triangle positions. For a moment map the key
/// of (i, j) is idx_i + idx_j; for a localizing map every term (gamma, g_gamma)
/// of g contributes g_gamma under idx_i + idx_j + gamma.
class LinearMatrixMap {
 public:
  using EntryMap = std::map<MultiIndex, std::vector<MatrixEntry>>;

  LinearMatrixMap(std::size_t size, std::size_t nvars);

  std::size_t size() const noexcept { return size_; }
  std::size_t nvars() const noexcept { return nvars_; }
  int shift_degree() const noexcept { return shift_degree_; }
  const EntryMap& entries() const noexcept { return entries_; }

  /// Accumulates `coef` at (row, col) under `key`; positions are normalized to row <= col.
  void add(const MultiIndex& key, std::size_t row, std::size_t col, double coef);

  /// Materialized coefficient matrix of one key (B_alpha or C_alpha); zero if absent.
  Eigen::MatrixXd coefficient_matrix(const MultiIndex& key) const;

  bool operator==(const LinearMatrixMap&) const = default;

 private:
  std::size_t size_;
  std::size_t nvars_;
  int shift_degree_ = 0;
  EntryMap entries_;
};

/// M_d: rows and columns indexed by enumerate_indices(nvars, d).
LinearMatrixMap moment_map(std::size_t nvars, int d);

/// M_d(g z); shift_degree = 2d + deg g.
LinearMatrixMap localizing_map(const Polynomial& g, int d);

/// Dense symmetric matrix sum_key z_key * coefficient_matrix(key).
/// Throws IncompleteDataError naming the first missing key.
Eigen::MatrixXd instantiate(const LinearMatrixMap& map, const std::map<MultiIndex, double>& z);

template <class Tag>
Eigen::MatrixXd instantiate(const LinearMatrixMap& map, const BasicMomentVector<Tag>& z) {
  return instantiate(map, z.entries());
}

/// v_d(point) in graded-lex order.
Eigen::VectorXd monomial_vector(std::span<const double> point, int d);

}  // namespace lmoment
