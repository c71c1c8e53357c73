#pragma once

#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lmoment {

using Rational = boost::multiprecision::cpp_rational;

/// Rows beyond this are unreliable in double precision: the iterated
/// differences amplify input rounding roughly like 2^n.
inline constexpr int kDoubleRowCap = 60;

/// s_{nj} = C(n,j) (-1)^{n-j} Delta^{n-j} s_j for 0 <= j <= n <= n_max.
template <class T>
class BasicDifferenceTable {
 public:
  explicit BasicDifferenceTable(std::vector<std::vector<T>> rows) : rows_(std::move(rows)) {}

  int n_max() const noexcept { return static_cast<int>(rows_.size()) - 1; }
  const T& at(int n, int j) const { return rows_.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(j)); }
  const std::vector<T>& row(int n) const { return rows_.at(static_cast<std::size_t>(n)); }

 private:
  std::vector<std::vector<T>> rows_;
};

using DifferenceTable = BasicDifferenceTable<double>;
using ExactDifferenceTable = BasicDifferenceTable<Rational>;

/// Builds the table from s_0..s_{n_max} with b_{r,j} = b_{r-1,j} - b_{r-1,j+1}
/// (so b_{r,j} = (-1)^r Delta^r s_j) and s_{nj} = C(n,j) b_{n-j,j}.
/// Throws ArgumentError on an empty sequence.
template <class T>
BasicDifferenceTable<T> difference_table(std::span<const T> s);

inline constexpr double kHausdorffTolerance = 1e-10;

struct MarkovResult {
  bool pass = true;
  int n = -1;  // first violating row
  int j = -1;
  double value = 0.0;  // s_{nj}
  double bound = 0.0;  // c / (n + 1)
  bool negative = false;
};

/// Scans rows 0..n_max for 0 <= s_{nj} <= c/(n+1), each side with tolerance
/// 1e-10. Throws ValidationError unless s_0 = 1 and c > 0; ArgumentError if
/// fewer than n_max + 1 moments are given.
template <class T>
MarkovResult check_markov(std::span<const T> s, double c, int n_max);

struct LpResult {
  bool pass = true;
  /// A negative s_{nj} was found; the L_p test is then not applicable.
  bool not_positive = false;
  int n = -1;
  int j = -1;           // offending column when not_positive
  double value = 0.0;   // r_n, or s_{nj} when not_positive
  double max_r = 0.0;   // largest r_n seen
};

/// r_n = ((1/(n+1)) sum_j ((n+1) s_{nj})^p)^{1/p}; fails at the first n with
/// r_n >= c - 1e-10. Same preconditions as check_markov plus p > 1.
template <class T>
LpResult check_lp(std::span<const T> s, double p, double c, int n_max);

/// Simplest rational within `ulps` units in the last place of x (continued
/// fractions). Maps double renderings of 1/3, 0.1, ... back to exact values.
Rational rationalize(double x, int ulps = 4);

extern template BasicDifferenceTable<double> difference_table(std::span<const double>);
extern template BasicDifferenceTable<Rational> difference_table(std::span<const Rational>);
extern template MarkovResult check_markov(std::span<const double>, double, int);
extern template MarkovResult check_markov(std::span<const Rational>, double, int);
extern template LpResult check_lp(std::span<const double>, double, double, int);
extern template LpResult check_lp(std::span<const Rational>, double, double, int);

}  // namespace lmoment
