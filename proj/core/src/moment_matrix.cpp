#include "lmoment/moment_matrix.hpp"

#include <algorithm>

#include "lmoment/errors.hpp"

namespace lmoment {

LinearMatrixMap::LinearMatrixMap(std::size_t size, std::size_t nvars) : size_(size), nvars_(nvars) {
  if (size_ == 0) throw ArgumentError("matrix map needs size >= 1");
}

void LinearMatrixMap::add(const MultiIndex& key, std::size_t row, std::size_t col, double coef) {
  if (key.size() != nvars_) throw ArgumentError("matrix map key " + key.to_string() + " has the wrong length");
  if (row >= size_ || col >= size_) throw ArgumentError("matrix map position out of range");
  if (coef == 0.0) return;
  if (row > col) std::swap(row, col);
  auto& list = entries_[key];
  for (auto& e : list) {
    if (e.row == row && e.col == col) {
      e.coef += coef;
      return;
    }
  }
  list.push_back({row, col, coef});
  shift_degree_ = std::max(shift_degree_, key.degree());
}

Eigen::MatrixXd LinearMatrixMap::coefficient_matrix(const MultiIndex& key) const {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(size_), static_cast<Eigen::Index>(size_));
  auto it = entries_.find(key);
  if (it == entries_.end()) return b;
  for (const auto& e : it->second) {
    const auto r = static_cast<Eigen::Index>(e.row), c = static_cast<Eigen::Index>(e.col);
    b(r, c) += e.coef;
    if (r != c) b(c, r) += e.coef;
  }
  return b;
}

LinearMatrixMap moment_map(std::size_t nvars, int d) {
  if (d < 0) throw ArgumentError("moment_map needs d >= 0");
  const auto basis = enumerate_indices(nvars, d);
  LinearMatrixMap map(basis.size(), nvars);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) map.add(basis[i] + basis[j], i, j, 1.0);
  }
  return map;
}

LinearMatrixMap localizing_map(const Polynomial& g, int d) {
  if (d < 0) throw ArgumentError("localizing_map needs d >= 0");
  const auto basis = enumerate_indices(g.nvars(), d);
  LinearMatrixMap map(basis.size(), g.nvars());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const MultiIndex base = basis[i] + basis[j];
      for (const auto& [gam, c] : g.terms()) map.add(base + gam, i, j, c);
    }
  }
  return map;
}

Eigen::MatrixXd instantiate(const LinearMatrixMap& map, const std::map<MultiIndex, double>& z) {
  const auto n = static_cast<Eigen::Index>(map.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [key, list] : map.entries()) {
    auto it = z.find(key);
    if (it == z.end()) throw IncompleteDataError("missing moment " + key.to_string(), {key.to_string()});
    const double v = it->second;
    for (const auto& e : list) m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) += v * e.coef;
  }
  // Mirror the upper triangle.
  m.triangularView<Eigen::StrictlyLower>() = m.transpose().triangularView<Eigen::StrictlyLower>();
  return m;
}

Eigen::VectorXd monomial_vector(std::span<const double> point, int d) {
  const auto basis = enumerate_indices(point.size(), d);
  Eigen::VectorXd v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t r = 0; r < basis.size(); ++r) {
    double prod = 1.0;
    for (std::size_t i = 0; i < point.size(); ++i) {
      for (int e = 0; e < basis[r][i]; ++e) prod *= point[i];
    }
    v(static_cast<Eigen::Index>(r)) = prod;
  }
  return v;
}

}  // namespace lmoment
