#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lmoment/multi_index.hpp"

namespace lmoment {

/// Sparse real polynomial. Terms are kept in graded-lex order and no stored
/// coefficient is exactly zero. The zero polynomial has no terms and degree 0.
class Polynomial {
 public:
  using TermMap = std::map<MultiIndex, double>;

  explicit Polynomial(std::size_t nvars);
  Polynomial(std::size_t nvars, std::initializer_list<std::pair<MultiIndex, double>> terms);

  static Polynomial constant(std::size_t nvars, double value);
  static Polynomial monomial(const MultiIndex& idx, double coef = 1.0);
  /// c_0 + c_1 x + c_2 x^2 + ... in one variable.
  static Polynomial univariate(std::span<const double> coeffs);

  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  int degree() const noexcept;
  double coefficient(const MultiIndex& idx) const;

  /// Adds `coef` to the coefficient of `idx`, erasing the term on exact cancellation.
  void add_term(const MultiIndex& idx, double coef);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double factor);
  Polynomial operator-() const;

  /// Same polynomial in nvars()+extra variables; the new variables get exponent 0.
  Polynomial lifted(std::size_t extra = 1) const;

  std::string to_string() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void require_same_nvars(const Polynomial& other) const;

  std::size_t nvars_;
  TermMap terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(Polynomial a, double factor);
Polynomial operator*(const Polynomial& a, const Polynomial& b);

/// Exact sparse convolution; throws ArgumentError if the variable counts differ.
Polynomial poly_mul(const Polynomial& p, const Polynomial& q);
Polynomial poly_pow(const Polynomial& p, int k);

/// sum coef * prod point_i^e_i; throws ArgumentError on a length mismatch.
double evaluate(const Polynomial& p, std::span<const double> point);

}  // namespace lmoment
