#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace lmoment {

/// Exponent vector alpha in N^n. The ordering is graded-lexicographic:
/// ascending total degree, then lexicographically *descending* exponents
/// within a degree, so that in two variables (1,0) precedes (0,1).
/// Indexes of different lengths are ordered by length first; they are never
/// mixed inside one container by the library.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> exponents);
  MultiIndex(std::initializer_list<int> exponents);

  static MultiIndex zero(std::size_t nvars);
  /// e_i scaled by `power`.
  static MultiIndex unit(std::size_t nvars, std::size_t i, int power = 1);

  std::size_t size() const noexcept { return exps_.size(); }
  int degree() const noexcept { return degree_; }
  int operator[](std::size_t i) const { return exps_[i]; }
  std::span<const int> exponents() const noexcept { return exps_; }

  MultiIndex operator+(const MultiIndex& other) const;
  MultiIndex scaled(int factor) const;

  /// Appends one trailing exponent (used to go from x to (x, t)).
  MultiIndex appended(int last) const;
  /// Leading `n` exponents.
  MultiIndex head(std::size_t n) const;
  int back() const { return exps_.back(); }

  std::string to_string() const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) noexcept {
    return a.exps_ == b.exps_;
  }
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) noexcept;

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

std::ostream& operator<<(std::ostream& os, const MultiIndex& idx);

/// Binomial coefficient; throws CapacityError on 64-bit overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// All indexes of `nvars` variables with degree <= d, in graded-lex order.
/// The list has binomial(nvars + d, d) entries.
std::vector<MultiIndex> enumerate_indices(std::size_t nvars, int d);

/// Position of `idx` in enumerate_indices(idx.size(), d) for any d >= degree.
std::size_t index_rank(const MultiIndex& idx);

/// Number of indexes of `nvars` variables with degree <= d.
std::size_t index_count(std::size_t nvars, int d);

}  // namespace lmoment
