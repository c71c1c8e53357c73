#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "lmoment/multi_index.hpp"
#include "lmoment/polynomial.hpp"
#include "lmoment/semialgebraic.hpp"

namespace lmoment {

/// Moments indexed by MultiIndex, complete for every degree <= max_order.
/// Instantiated twice: MomentVector for y and gamma over N^n, and
/// JointMomentVector for z over N^{n+1} where the last variable is t.
template <class Tag>
class BasicMomentVector {
 public:
  using EntryMap = std::map<MultiIndex, double>;

  BasicMomentVector(std::size_t nvars, int max_order, EntryMap entries, bool probability = false);

  std::size_t nvars() const noexcept { return nvars_; }
  int max_order() const noexcept { return max_order_; }
  bool is_probability() const noexcept { return probability_; }
  const EntryMap& entries() const noexcept { return entries_; }

  /// Throws IncompleteDataError naming the key when it is absent.
  double at(const MultiIndex& idx) const;
  std::optional<double> find(const MultiIndex& idx) const;

  /// Keys of degree <= order that are absent (empty when the vector covers `order`).
  std::vector<MultiIndex> missing_up_to(int order) const;

  /// The same data restricted to degrees <= order.
  BasicMomentVector truncated(int order) const;

 private:
  std::size_t nvars_;
  int max_order_;
  EntryMap entries_;
  bool probability_;
};

struct MarginalMomentsTag;
struct JointMomentsTag;
using MomentVector = BasicMomentVector<MarginalMomentsTag>;
using JointMomentVector = BasicMomentVector<JointMomentsTag>;

extern template class BasicMomentVector<MarginalMomentsTag>;
extern template class BasicMomentVector<JointMomentsTag>;

struct Atom {
  std::vector<double> location;
  double weight = 1.0;
};

/// a * lambda_box + (1 - a) * sum_i w_i delta_{s_i}, with sum_i w_i = 1.
struct MixtureScenario {
  double a = 1.0;
  std::vector<Atom> atoms;

  /// Throws ValidationError when a is outside [0,1], weights are negative or
  /// do not sum to one, or an atom lies outside the box.
  void validate(const Box& box) const;
};

/// Moment of x^alpha under the uniform probability measure on the box.
double box_monomial_moment(const Box& box, const MultiIndex& alpha);

/// gamma_alpha for |alpha| <= max_order. The Lebesgue measure is always scaled
/// to a probability measure on the box, so gamma_0 = 1.
MomentVector box_lebesgue_moments(const Box& box, int max_order);

/// y_alpha = a gamma_alpha + (1 - a) sum_i w_i s_i^alpha.
MomentVector mixture_moments(const MixtureScenario& scenario, const Box& box, int max_order);

/// z_{alpha k} = int_box x^alpha f(x)^k dlambda for |alpha| + k <= max_order,
/// by exact expansion of f^k and monomial integration. Nonnegativity of f is
/// not checked.
JointMomentVector witness_joint_moments(const Polynomial& density, const Box& box, int max_order);

/// Moments of the measure f dlambda (the k = 1 slice of the witness).
MomentVector density_moments(const Polynomial& density, const Box& box, int max_order);

}  // namespace lmoment
