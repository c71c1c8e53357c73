#include "lmoment/hausdorff.hpp"

#include <cmath>

#include "lmoment/errors.hpp"

namespace lmoment {
namespace {

template <class T>
double to_double(const T& v) {
  return static_cast<double>(v);
}

template <class T>
T from_double(double v) {
  return T(v);
}

template <class T>
void check_inputs(std::span<const T> s, double c, int n_max) {
  if (s.empty()) throw ArgumentError("moment sequence is empty");
  if (n_max < 0) throw ArgumentError("n_max must be >= 0");
  if (static_cast<std::size_t>(n_max) + 1 > s.size()) {
    throw ArgumentError("need " + std::to_string(n_max + 1) + " moments, got " + std::to_string(s.size()));
  }
  if (std::abs(to_double(s[0]) - 1.0) > 1e-12) throw ValidationError("s_0 must equal 1");
  if (!(c > 0.0)) throw ValidationError("c must be positive");
}

}  // namespace

template <class T>
BasicDifferenceTable<T> difference_table(std::span<const T> s) {
  if (s.empty()) throw ArgumentError("moment sequence is empty");
  const std::size_t nmax = s.size() - 1;
  // b[r][j], j <= nmax - r.
  std::vector<std::vector<T>> b(nmax + 1);
  b[0].assign(s.begin(), s.end());
  for (std::size_t r = 1; r <= nmax; ++r) {
    b[r].resize(nmax - r + 1);
    for (std::size_t j = 0; j + r <= nmax; ++j) b[r][j] = b[r - 1][j] - b[r - 1][j + 1];
  }
  std::vector<std::vector<T>> rows(nmax + 1);
  for (std::size_t n = 0; n <= nmax; ++n) {
    rows[n].resize(n + 1);
    T binom = T(1);
    for (std::size_t j = 0; j <= n; ++j) {
      rows[n][j] = binom * b[n - j][j];
      binom = binom * T(static_cast<long long>(n - j)) / T(static_cast<long long>(j + 1));
    }
  }
  return BasicDifferenceTable<T>(std::move(rows));
}

template <class T>
MarkovResult check_markov(std::span<const T> s, double c, int n_max) {
  check_inputs(s, c, n_max);
  const auto table = difference_table(s.first(static_cast<std::size_t>(n_max) + 1));
  const T tol = from_double<T>(kHausdorffTolerance);
  const T cc = from_double<T>(c);
  MarkovResult res;
  for (int n = 0; n <= n_max; ++n) {
    const T bound = cc / T(n + 1);
    for (int j = 0; j <= n; ++j) {
      const T& v = table.at(n, j);
      const bool neg = v < -tol;
      if (neg || v > bound + tol) {
        res.pass = false;
        res.n = n;
        res.j = j;
        res.value = to_double(v);
        res.bound = to_double(bound);
        res.negative = neg;
        return res;
      }
    }
  }
  return res;
}

template <class T>
LpResult check_lp(std::span<const T> s, double p, double c, int n_max) {
  check_inputs(s, c, n_max);
  if (!(p > 1.0)) throw ValidationError("p must exceed 1");
  const auto table = difference_table(s.first(static_cast<std::size_t>(n_max) + 1));
  LpResult res;
  for (int n = 0; n <= n_max; ++n) {
    double acc = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double v = to_double(table.at(n, j));
      if (v < -kHausdorffTolerance) {
        res.pass = false;
        res.not_positive = true;
        res.n = n;
        res.j = j;
        res.value = v;
        return res;
      }
      acc += std::pow((n + 1) * std::max(v, 0.0), p);
    }
    const double r = std::pow(acc / (n + 1), 1.0 / p);
    res.max_r = std::max(res.max_r, r);
    if (r >= c - kHausdorffTolerance) {
      res.pass = false;
      res.n = n;
      res.value = r;
      return res;
    }
  }
  return res;
}

Rational rationalize(double x, int ulps) {
  if (!std::isfinite(x)) throw ArgumentError("cannot rationalize a non-finite value");
  if (x == 0.0) return Rational(0);
  const Rational exact(x);
  const Rational tol = Rational(std::abs(std::nextafter(x, HUGE_VAL) - x)) * ulps;
  using boost::multiprecision::cpp_int;
  // Convergents h/k of the continued fraction of |x|.
  Rational rest = abs(exact);
  cpp_int h_prev = 1, h = 0, k_prev = 0, k = 1;
  for (int iter = 0; iter < 200; ++iter) {
    const cpp_int a = numerator(rest) / denominator(rest);
    const cpp_int h_next = a * h_prev + h;
    const cpp_int k_next = a * k_prev + k;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    const Rational approx(h_prev, k_prev);
    if (abs(approx - abs(exact)) <= tol) return x < 0 ? Rational(-approx) : approx;
    const Rational frac = rest - Rational(a);
    if (frac == 0) break;
    rest = 1 / frac;
  }
  return exact;
}

template BasicDifferenceTable<double> difference_table(std::span<const double>);
template BasicDifferenceTable<Rational> difference_table(std::span<const Rational>);
template MarkovResult check_markov(std::span<const double>, double, int);
template MarkovResult check_markov(std::span<const Rational>, double, int);
template LpResult check_lp(std::span<const double>, double, double, int);
template LpResult check_lp(std::span<const Rational>, double, double, int);

}  // namespace lmoment
