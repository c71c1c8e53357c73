#include "lmoment/semialgebraic.hpp"

#include <cmath>
#include <string>

#include "lmoment/errors.hpp"

namespace lmoment {

void validate_box(const Box& box) {
  if (box.empty()) throw ArgumentError("box must have at least one interval");
  for (std::size_t i = 0; i < box.size(); ++i) {
    const auto& iv = box[i];
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.lo < iv.hi)) {
      throw ArgumentError("box interval " + std::to_string(i) + " is degenerate: [" + std::to_string(iv.lo) + ", " +
                          std::to_string(iv.hi) + "]");
    }
  }
}

SemialgebraicSet::SemialgebraicSet(std::size_t nvars, std::vector<Polynomial> inequalities, Box box)
    : nvars_(nvars), inequalities_(std::move(inequalities)), box_(std::move(box)) {
  if (nvars_ == 0) throw ArgumentError("semialgebraic set needs at least one variable");
  if (box_.size() != nvars_) throw ArgumentError("box dimension does not match the number of variables");
  validate_box(box_);
  for (const auto& g : inequalities_) {
    if (g.nvars() != nvars_) throw ArgumentError("inequality " + g.to_string() + " has the wrong number of variables");
  }
}

SemialgebraicSet SemialgebraicSet::interval(double lo, double hi) {
  // (x - lo)(hi - x)
  Polynomial left(1, {{MultiIndex{1}, 1.0}, {MultiIndex{0}, -lo}});
  Polynomial right(1, {{MultiIndex{0}, hi}, {MultiIndex{1}, -1.0}});
  return SemialgebraicSet(1, {poly_mul(left, right)}, Box{{lo, hi}});
}

bool PreorderingTerm::is_unit() const {
  for (auto b : selector) {
    if (b) return false;
  }
  return true;
}

std::vector<PreorderingTerm> preordering(const SemialgebraicSet& set) {
  const std::size_t m = set.inequalities().size();
  if (m > kMaxPreorderingGenerators) {
    throw CapacityError("preordering of " + std::to_string(m) + " generators needs 2^" + std::to_string(m) +
                        " products; the limit is 2^" + std::to_string(kMaxPreorderingGenerators));
  }
  const std::size_t count = std::size_t{1} << m;
  std::vector<PreorderingTerm> out;
  out.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    PreorderingTerm term{std::vector<std::uint8_t>(m, 0), Polynomial::constant(set.nvars(), 1.0), 0};
    for (std::size_t j = 0; j < m; ++j) {
      if ((code >> j) & 1U) {
        term.selector[j] = 1;
        term.product = poly_mul(term.product, set.inequalities()[j]);
      }
    }
    term.halfdeg = (term.product.degree() + 1) / 2;
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace lmoment
