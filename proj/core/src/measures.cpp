#include "lmoment/measures.hpp"

#include <cmath>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "lmoment/errors.hpp"

namespace lmoment {

template <class Tag>
BasicMomentVector<Tag>::BasicMomentVector(std::size_t nvars, int max_order, EntryMap entries, bool probability)
    : nvars_(nvars), max_order_(max_order), entries_(std::move(entries)), probability_(probability) {
  if (nvars_ == 0) throw ArgumentError("moment vector needs at least one variable");
  if (max_order_ < 0) throw ArgumentError("moment vector max_order must be >= 0");
  for (const auto& [idx, v] : entries_) {
    if (idx.size() != nvars_) throw ArgumentError("moment key " + idx.to_string() + " has the wrong length");
    (void)v;
  }
  auto missing = missing_up_to(max_order_);
  if (!missing.empty()) {
    std::vector<std::string> names;
    for (const auto& k : missing) names.push_back(k.to_string());
    throw IncompleteDataError("moment vector is incomplete up to order " + std::to_string(max_order_), names);
  }
}

template <class Tag>
double BasicMomentVector<Tag>::at(const MultiIndex& idx) const {
  auto it = entries_.find(idx);
  if (it == entries_.end()) {
    throw IncompleteDataError("missing moment " + idx.to_string(), {idx.to_string()});
  }
  return it->second;
}

template <class Tag>
std::optional<double> BasicMomentVector<Tag>::find(const MultiIndex& idx) const {
  auto it = entries_.find(idx);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

template <class Tag>
std::vector<MultiIndex> BasicMomentVector<Tag>::missing_up_to(int order) const {
  std::vector<MultiIndex> missing;
  if (order < 0) return missing;
  for (const auto& idx : enumerate_indices(nvars_, order)) {
    if (!entries_.contains(idx)) missing.push_back(idx);
  }
  return missing;
}

template <class Tag>
BasicMomentVector<Tag> BasicMomentVector<Tag>::truncated(int order) const {
  if (order > max_order_) throw ArgumentError("cannot truncate above max_order");
  EntryMap kept;
  for (const auto& [idx, v] : entries_) {
    if (idx.degree() <= order) kept.emplace(idx, v);
  }
  return BasicMomentVector(nvars_, order, std::move(kept), probability_);
}

template class BasicMomentVector<MarginalMomentsTag>;
template class BasicMomentVector<JointMomentsTag>;

void MixtureScenario::validate(const Box& box) const {
  validate_box(box);
  if (!(a >= 0.0 && a <= 1.0)) throw ValidationError("mixture weight a must lie in [0,1]");
  if (a < 1.0 && atoms.empty()) throw ValidationError("a < 1 requires at least one atom");
  double total = 0.0;
  for (const auto& atom : atoms) {
    if (atom.weight < 0.0) throw ValidationError("atom weights must be nonnegative");
    if (atom.location.size() != box.size()) throw ValidationError("atom location has the wrong dimension");
    for (std::size_t i = 0; i < box.size(); ++i) {
      if (atom.location[i] < box[i].lo || atom.location[i] > box[i].hi) {
        throw ValidationError("atom lies outside the box");
      }
    }
    total += atom.weight;
  }
  if (!atoms.empty() && std::abs(total - 1.0) > 1e-12) {
    throw ValidationError("atom weights must sum to 1 (got " + std::to_string(total) + ")");
  }
}

namespace {

using Wide = boost::multiprecision::cpp_bin_float_50;

// m[i][e] = int x_i^e over the normalized interval i, e = 0..order.
template <class T = double>
std::vector<std::vector<T>> axis_moments(const Box& box, int order) {
  std::vector<std::vector<T>> m(box.size(), std::vector<T>(static_cast<std::size_t>(order) + 1));
  for (std::size_t i = 0; i < box.size(); ++i) {
    const T lo = box[i].lo, hi = box[i].hi;
    T plo = lo, phi = hi;  // lo^{e+1}, hi^{e+1}
    for (int e = 0; e <= order; ++e) {
      m[i][static_cast<std::size_t>(e)] = (phi - plo) / ((e + 1) * (hi - lo));
      plo *= lo;
      phi *= hi;
    }
  }
  return m;
}

template <class T>
T product_moment(const std::vector<std::vector<T>>& axes, const MultiIndex& alpha) {
  T v = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) v *= axes[i][static_cast<std::size_t>(alpha[i])];
  return v;
}

}  // namespace

double box_monomial_moment(const Box& box, const MultiIndex& alpha) {
  validate_box(box);
  if (alpha.size() != box.size()) throw ArgumentError("moment index dimension does not match the box");
  int order = 0;
  for (int e : alpha.exponents()) order = std::max(order, e);
  return product_moment(axis_moments(box, order), alpha);
}

MomentVector box_lebesgue_moments(const Box& box, int max_order) {
  validate_box(box);
  const auto axes = axis_moments(box, max_order);
  MomentVector::EntryMap entries;
  for (const auto& idx : enumerate_indices(box.size(), max_order)) entries.emplace(idx, product_moment(axes, idx));
  entries[MultiIndex::zero(box.size())] = 1.0;
  return MomentVector(box.size(), max_order, std::move(entries), true);
}

MomentVector mixture_moments(const MixtureScenario& scenario, const Box& box, int max_order) {
  scenario.validate(box);
  const auto axes = axis_moments(box, max_order);
  MomentVector::EntryMap entries;
  for (const auto& idx : enumerate_indices(box.size(), max_order)) {
    double atomic = 0.0;
    for (const auto& atom : scenario.atoms) {
      double v = atom.weight;
      for (std::size_t i = 0; i < idx.size(); ++i) v *= std::pow(atom.location[i], idx[i]);
      atomic += v;
    }
    entries.emplace(idx, scenario.a * product_moment(axes, idx) + (1.0 - scenario.a) * atomic);
  }
  entries[MultiIndex::zero(box.size())] = 1.0;
  return MomentVector(box.size(), max_order, std::move(entries), true);
}

JointMomentVector witness_joint_moments(const Polynomial& density, const Box& box, int max_order) {
  validate_box(box);
  if (density.nvars() != box.size()) throw ArgumentError("density and box dimensions differ");
  const std::size_t n = box.size();
  const int fdeg = density.degree();
  // Powers of f cancel heavily (6x - 6x^2 to the 12th has coefficients near 1e12),
  // so the expansion runs in 50 digits and is rounded once at the end.
  const auto axes = axis_moments<Wide>(box, max_order + max_order * fdeg);

  using WidePoly = std::map<MultiIndex, Wide>;
  WidePoly f;
  for (const auto& [gam, c] : density.terms()) f[gam] += Wide(c);
  std::vector<WidePoly> powers{WidePoly{{MultiIndex::zero(n), Wide(1)}}};
  for (int k = 1; k <= max_order; ++k) {
    WidePoly next;
    for (const auto& [a, ca] : powers.back()) {
      for (const auto& [b, cb] : f) next[a + b] += ca * cb;
    }
    powers.push_back(std::move(next));
  }

  JointMomentVector::EntryMap entries;
  for (const auto& key : enumerate_indices(n + 1, max_order)) {
    const int k = key.back();
    const MultiIndex alpha = key.head(n);
    Wide v = 0;
    for (const auto& [gam, c] : powers[static_cast<std::size_t>(k)]) v += c * product_moment(axes, alpha + gam);
    entries.emplace(key, static_cast<double>(v));
  }
  entries[MultiIndex::zero(n + 1)] = 1.0;
  return JointMomentVector(n + 1, max_order, std::move(entries), true);
}

MomentVector density_moments(const Polynomial& density, const Box& box, int max_order) {
  validate_box(box);
  if (density.nvars() != box.size()) throw ArgumentError("density and box dimensions differ");
  const auto axes = axis_moments(box, max_order + density.degree());
  MomentVector::EntryMap entries;
  for (const auto& alpha : enumerate_indices(box.size(), max_order)) {
    double v = 0.0;
    for (const auto& [gam, c] : density.terms()) v += c * product_moment(axes, alpha + gam);
    entries.emplace(alpha, v);
  }
  const bool probability = std::abs(entries.at(MultiIndex::zero(box.size())) - 1.0) < 1e-12;
  return MomentVector(box.size(), max_order, std::move(entries), probability);
}

}  // namespace lmoment
