#pragma once

// Property checks on assembled moment/localizing maps, shared by the unit and
// acceptance suites.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "lmoment/moment_matrix.hpp"
#include "lmoment/polynomial.hpp"

namespace identities {

inline double monomial_value(const lmoment::MultiIndex& alpha, const std::vector<double>& p) {
  double v = 1.0;
  for (std::size_t i = 0; i < p.size(); ++i) v *= std::pow(p[i], alpha[i]);
  return v;
}

/// Largest relative entry error of sum_key p^key * coefficient_matrix(key)
/// against scale * v_d(p) v_d(p)^T over `points` random p in [-1,1]^nvars,
/// where scale is g(p) (or 1 without g).
inline double reconstruction_error(const lmoment::LinearMatrixMap& map, int d, const lmoment::Polynomial* g,
                                   int points, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Eigen::MatrixXd> coeff;
  std::vector<lmoment::MultiIndex> keys;
  for (const auto& [key, entries] : map.entries()) {
    keys.push_back(key);
    coeff.push_back(map.coefficient_matrix(key));
  }
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    std::vector<double> p(map.nvars());
    for (auto& v : p) v = u(gen);
    Eigen::MatrixXd lhs = Eigen::MatrixXd::Zero(map.size(), map.size());
    for (std::size_t k = 0; k < keys.size(); ++k) lhs += monomial_value(keys[k], p) * coeff[k];
    const Eigen::VectorXd v = lmoment::monomial_vector(p, d);
    const double scale = g ? lmoment::evaluate(*g, p) : 1.0;
    const Eigen::MatrixXd rhs = scale * v * v.transpose();
    for (Eigen::Index r = 0; r < rhs.rows(); ++r) {
      for (Eigen::Index c = 0; c < rhs.cols(); ++c) {
        const double err = std::abs(lhs(r, c) - rhs(r, c)) / std::max(1.0, std::abs(rhs(r, c)));
        worst = std::max(worst, err);
      }
    }
  }
  return worst;
}

/// True when instantiate(moment_map) has equal entries at every pair of
/// positions whose index sums agree (exact comparison).
inline bool hankel_exact(std::size_t nvars, int d, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::map<lmoment::MultiIndex, double> z;
  for (const auto& k : lmoment::enumerate_indices(nvars, 2 * d)) z[k] = u(gen);
  const auto map = lmoment::moment_map(nvars, d);
  const Eigen::MatrixXd m = lmoment::instantiate(map, z);
  const auto idx = lmoment::enumerate_indices(nvars, d);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) {
      if (m(i, j) != z.at(idx[i] + idx[j])) return false;
      for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = 0; b < idx.size(); ++b) {
          if (idx[i] + idx[j] == idx[a] + idx[b] && m(i, j) != m(a, b)) return false;
        }
      }
    }
  }
  return true;
}

/// Localizing generator used by the property checks: 1 - |x|^2 with t left out.
inline lmoment::Polynomial ball_generator(std::size_t nx) {
  lmoment::Polynomial g = lmoment::Polynomial::constant(nx, 1.0);
  for (std::size_t i = 0; i < nx; ++i) g.add_term(lmoment::MultiIndex::unit(nx, i, 2), -1.0);
  return g;
}

}  // namespace identities
