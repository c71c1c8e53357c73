#include "lmoment/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lmoment/errors.hpp"

namespace lmoment {

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {
  if (nvars == 0) throw ArgumentError("Polynomial needs at least one variable");
}

Polynomial::Polynomial(std::size_t nvars, std::initializer_list<std::pair<MultiIndex, double>> terms)
    : Polynomial(nvars) {
  for (const auto& [idx, coef] : terms) add_term(idx, coef);
}

Polynomial Polynomial::constant(std::size_t nvars, double value) {
  Polynomial p(nvars);
  p.add_term(MultiIndex::zero(nvars), value);
  return p;
}

Polynomial Polynomial::monomial(const MultiIndex& idx, double coef) {
  Polynomial p(idx.size());
  p.add_term(idx, coef);
  return p;
}

Polynomial Polynomial::univariate(std::span<const double> coeffs) {
  Polynomial p(1);
  for (std::size_t k = 0; k < coeffs.size(); ++k) p.add_term(MultiIndex{static_cast<int>(k)}, coeffs[k]);
  return p;
}

int Polynomial::degree() const noexcept {
  // Terms are sorted by degree first, so the last key has maximal degree.
  return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

double Polynomial::coefficient(const MultiIndex& idx) const {
  auto it = terms_.find(idx);
  return it == terms_.end() ? 0.0 : it->second;
}

void Polynomial::add_term(const MultiIndex& idx, double coef) {
  if (idx.size() != nvars_) throw ArgumentError("term " + idx.to_string() + " has the wrong number of variables");
  if (coef == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(idx, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0.0) terms_.erase(it);
  }
}

void Polynomial::require_same_nvars(const Polynomial& other) const {
  if (other.nvars_ != nvars_) {
    throw ArgumentError("polynomials in " + std::to_string(nvars_) + " and " + std::to_string(other.nvars_) +
                        " variables cannot be combined");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_nvars(other);
  for (const auto& [idx, c] : other.terms_) add_term(idx, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_nvars(other);
  for (const auto& [idx, c] : other.terms_) add_term(idx, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double factor) {
  if (factor == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [idx, c] : terms_) c *= factor;
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0.0; });
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r(*this);
  r *= -1.0;
  return r;
}

Polynomial Polynomial::lifted(std::size_t extra) const {
  Polynomial r(nvars_ + extra);
  for (const auto& [idx, c] : terms_) {
    MultiIndex lifted_idx = idx;
    for (std::size_t i = 0; i < extra; ++i) lifted_idx = lifted_idx.appended(0);
    r.terms_.emplace(std::move(lifted_idx), c);
  }
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << '-';
    first = false;
    os << std::abs(c);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (idx[i] == 0) continue;
      os << "*x" << i + 1;
      if (idx[i] > 1) os << '^' << idx[i];
    }
  }
  return os.str();
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
Polynomial operator*(Polynomial a, double factor) { return a *= factor; }
Polynomial operator*(const Polynomial& a, const Polynomial& b) { return poly_mul(a, b); }

Polynomial poly_mul(const Polynomial& p, const Polynomial& q) {
  if (p.nvars() != q.nvars()) {
    throw ArgumentError("poly_mul: operands have " + std::to_string(p.nvars()) + " and " +
                        std::to_string(q.nvars()) + " variables");
  }
  Polynomial r(p.nvars());
  for (const auto& [a, ca] : p.terms()) {
    for (const auto& [b, cb] : q.terms()) r.add_term(a + b, ca * cb);
  }
  return r;
}

Polynomial poly_pow(const Polynomial& p, int k) {
  if (k < 0) throw ArgumentError("poly_pow needs k >= 0");
  Polynomial r = Polynomial::constant(p.nvars(), 1.0);
  for (int i = 0; i < k; ++i) r = poly_mul(r, p);
  return r;
}

double evaluate(const Polynomial& p, std::span<const double> point) {
  if (point.size() != p.nvars()) {
    throw ArgumentError("evaluate: point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                        std::to_string(p.nvars()) + " variables");
  }
  double sum = 0.0;
  for (const auto& [idx, c] : p.terms()) {
    double term = c;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (int e = 0; e < idx[i]; ++e) term *= point[i];
    }
    sum += term;
  }
  return sum;
}

}  // namespace lmoment
