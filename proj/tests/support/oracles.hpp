#pragma once

// Reference computations used by the tests. Nothing here calls into the
// library under test except for the MultiIndex key type.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "lmoment/multi_index.hpp"

namespace oracle {

/// Every exponent vector in {0..d}^n with sum <= d, sorted by degree and then
/// lexicographically descending.
std::vector<std::vector<int>> brute_force_indices(std::size_t n, int d);

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule for the uniform probability measure on [0, 1]
/// (Golub-Welsch: eigen-decomposition of the Jacobi matrix).
QuadratureRule gauss_legendre01(int points);

/// int_0^1 C(n,j) x^j (1-x)^(n-j) dx via std::beta.
double bernstein_integral(int n, int j);

double binomial_double(int n, int k);

struct WeightedPoint {
  std::vector<double> point;
  double weight = 1.0;
};

/// sum_i w_i p_i^alpha for every alpha of degree <= order, by direct summation.
std::map<lmoment::MultiIndex, double> atomic_moments(const std::vector<WeightedPoint>& atoms, int order);

/// int_0^1 x^alpha f(x)^k dx for f given by ascending coefficients, by
/// expanding f^k exactly in rationals.
double univariate_density_moment(const std::vector<double>& coeffs, int alpha, int k);

/// A measure nu = sum_i w_i delta_(x_i, t_i) on [0,1] x R with x-marginal
/// moments equal to the uniform ones through order 4d-1 and
/// int x^k t dnu = y_k for k < 2d. Built in 50-digit arithmetic from a
/// 2d-point Gauss rule; returned are its joint moments of order <= 2d.
std::map<lmoment::MultiIndex, double> quadrature_witness(const std::vector<double>& y, int d);

/// Largest |z| in a witness; its scale decides how tight a residual test can be.
double max_abs(const std::map<lmoment::MultiIndex, double>& z);

/// x^k by repeated multiplication (boost::multiprecision::pow does not take rationals).
inline boost::multiprecision::cpp_rational ipow(const boost::multiprecision::cpp_rational& x, int k) {
  boost::multiprecision::cpp_rational r = 1;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

/// Seeded generator shared by property tests.
inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace oracle
