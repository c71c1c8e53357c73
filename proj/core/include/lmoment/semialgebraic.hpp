#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "lmoment/polynomial.hpp"

namespace lmoment {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double width() const noexcept { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

using Box = std::vector<Interval>;

/// Throws ArgumentError unless every interval has lo < hi (and finite ends).
void validate_box(const Box& box);

/// K = { x : g_j(x) >= 0 } together with a user-asserted enclosing box.
/// Containment of K in the box is not verified.
class SemialgebraicSet {
 public:
  SemialgebraicSet(std::size_t nvars, std::vector<Polynomial> inequalities, Box box);

  /// The interval [lo, hi] described by the single inequality (x - lo)(hi - x) >= 0.
  static SemialgebraicSet interval(double lo, double hi);

  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Polynomial>& inequalities() const noexcept { return inequalities_; }
  const Box& box() const noexcept { return box_; }

 private:
  std::size_t nvars_;
  std::vector<Polynomial> inequalities_;
  Box box_;
};

/// One product g^beta of the preordering generated by the g_j.
struct PreorderingTerm {
  std::vector<std::uint8_t> selector;  // beta in {0,1}^m
  Polynomial product;
  int halfdeg = 0;  // ceil(deg(g^beta) / 2)

  bool is_unit() const;
};

inline constexpr std::size_t kMaxPreorderingGenerators = 20;

/// All 2^m products g^beta, beta in binary counting order starting at all-zeros
/// (bit j of the counter selects g_{j+1}).
std::vector<PreorderingTerm> preordering(const SemialgebraicSet& set);

}  // namespace lmoment
