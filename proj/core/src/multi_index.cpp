#include "lmoment/multi_index.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "lmoment/errors.hpp"

namespace lmoment {

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) {
  for (int e : exps_) {
    if (e < 0) throw ArgumentError("MultiIndex exponents must be nonnegative");
  }
  degree_ = std::accumulate(exps_.begin(), exps_.end(), 0);
}

MultiIndex::MultiIndex(std::initializer_list<int> exponents)
    : MultiIndex(std::vector<int>(exponents)) {}

MultiIndex MultiIndex::zero(std::size_t nvars) { return MultiIndex(std::vector<int>(nvars, 0)); }

MultiIndex MultiIndex::unit(std::size_t nvars, std::size_t i, int power) {
  std::vector<int> e(nvars, 0);
  e.at(i) = power;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (size() != other.size()) throw ArgumentError("MultiIndex length mismatch in sum");
  std::vector<int> e(exps_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exps_[i];
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::scaled(int factor) const {
  std::vector<int> e(exps_);
  for (int& v : e) v *= factor;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::appended(int last) const {
  std::vector<int> e(exps_);
  e.push_back(last);
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::head(std::size_t n) const {
  if (n > size()) throw ArgumentError("MultiIndex::head beyond length");
  return MultiIndex(std::vector<int>(exps_.begin(), exps_.begin() + static_cast<std::ptrdiff_t>(n)));
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) noexcept {
  if (a.size() != b.size()) return a.size() <=> b.size();
  if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
  // Within a degree, larger leading exponents come first.
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.exps_[i] != b.exps_[i]) return b.exps_[i] <=> a.exps_[i];
  }
  return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const MultiIndex& idx) {
  os << '(';
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) os << ',';
    os << idx[i];
  }
  return os << ')';
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i is exact at every step; guard the multiplication.
    const std::uint64_t num = n - k + i;
    const std::uint64_t g = std::gcd(r, i);
    const std::uint64_t r1 = r / g;
    const std::uint64_t num1 = num / (i / g);
    if (num1 != 0 && r1 > std::numeric_limits<std::uint64_t>::max() / num1) {
      throw CapacityError("binomial coefficient overflows 64 bits");
    }
    r = r1 * num1;
  }
  return r;
}

std::size_t index_count(std::size_t nvars, int d) {
  if (d < 0) return 0;
  return static_cast<std::size_t>(binomial(nvars + static_cast<std::size_t>(d), static_cast<std::size_t>(d)));
}

namespace {

// Appends all compositions of `remaining` into the slots prefix[pos..], in
// descending lexicographic order.
void compositions(std::vector<int>& prefix, std::size_t pos, int remaining, std::vector<MultiIndex>& out) {
  if (pos + 1 == prefix.size()) {
    prefix[pos] = remaining;
    out.emplace_back(prefix);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    prefix[pos] = v;
    compositions(prefix, pos + 1, remaining - v, out);
  }
}

}  // namespace

std::vector<MultiIndex> enumerate_indices(std::size_t nvars, int d) {
  if (nvars == 0) throw ArgumentError("enumerate_indices needs at least one variable");
  if (d < 0) throw ArgumentError("enumerate_indices needs d >= 0");
  std::vector<MultiIndex> out;
  out.reserve(index_count(nvars, d));
  std::vector<int> prefix(nvars, 0);
  for (int deg = 0; deg <= d; ++deg) compositions(prefix, 0, deg, out);
  return out;
}

std::size_t index_rank(const MultiIndex& idx) {
  const std::size_t n = idx.size();
  if (n == 0) throw ArgumentError("index_rank of an empty MultiIndex");
  const int deg = idx.degree();
  std::size_t rank = index_count(n, deg - 1);
  // Count same-degree indexes that are lexicographically larger.
  int remaining = deg;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const std::size_t slots_after = n - i - 1;
    for (int v = idx[i] + 1; v <= remaining; ++v) {
      const auto rest = static_cast<std::uint64_t>(remaining - v);
      rank += static_cast<std::size_t>(binomial(rest + slots_after - 1, slots_after - 1));
    }
    remaining -= idx[i];
  }
  return rank;
}

}  // namespace lmoment
