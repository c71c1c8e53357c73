#include <gtest/gtest.h>

#include <random>

#include "lmoment/errors.hpp"
#include "lmoment/multi_index.hpp"
#include "lmoment/polynomial.hpp"
#include "lmoment/semialgebraic.hpp"
#include "oracles.hpp"

using namespace lmoment;

TEST(MultiIndex, EnumerationMatchesBruteForce) {
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int d = 0; d <= 6; ++d) {
      const auto expected = oracle::brute_force_indices(n, d);
      const auto got = enumerate_indices(n, d);
      ASSERT_EQ(got.size(), expected.size()) << "n=" << n << " d=" << d;
      EXPECT_EQ(index_count(n, d), expected.size());
      EXPECT_EQ(binomial(n + d, d), expected.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i], MultiIndex(expected[i]));
        EXPECT_EQ(index_rank(got[i]), i);
      }
    }
  }
}

TEST(MultiIndex, TwoVariableOrder) {
  const auto idx = enumerate_indices(2, 2);
  const std::vector<MultiIndex> expected{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  EXPECT_EQ(idx, expected);
  EXPECT_LT(MultiIndex({1, 0}), MultiIndex({0, 1}));
  EXPECT_LT(MultiIndex({0, 1}), MultiIndex({2, 0}));
}

TEST(MultiIndex, Arithmetic) {
  const MultiIndex a{1, 2}, b{3, 0};
  EXPECT_EQ(a + b, MultiIndex({4, 2}));
  EXPECT_EQ(a.degree(), 3);
  EXPECT_EQ(a.scaled(2), MultiIndex({2, 4}));
  EXPECT_EQ(a.appended(5), MultiIndex({1, 2, 5}));
  EXPECT_EQ(MultiIndex({1, 2, 5}).head(2), a);
  EXPECT_EQ(MultiIndex::unit(3, 1, 4), MultiIndex({0, 4, 0}));
  EXPECT_THROW(MultiIndex({-1}), ArgumentError);
  EXPECT_THROW(a + MultiIndex({1}), ArgumentError);
}

TEST(MultiIndex, BinomialOverflow) {
  EXPECT_EQ(binomial(10, 3), 120u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_THROW(binomial(200, 100), CapacityError);
}

namespace {

Polynomial random_poly(std::mt19937_64& gen, std::size_t n, int deg) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Polynomial p(n);
  for (const auto& idx : enumerate_indices(n, deg)) {
    if (gen() % 3 != 0) p.add_term(idx, u(gen));
  }
  return p;
}

}  // namespace

TEST(Polynomial, ArithmeticAgreesWithEvaluation) {
  auto gen = oracle::rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const Polynomial p = random_poly(gen, n, 3), q = random_poly(gen, n, 2);
      std::vector<double> x(n);
      for (auto& v : x) v = u(gen);
      const double pv = evaluate(p, x), qv = evaluate(q, x);
      EXPECT_NEAR(evaluate(p + q, x), pv + qv, 1e-12);
      EXPECT_NEAR(evaluate(p - q, x), pv - qv, 1e-12);
      EXPECT_NEAR(evaluate(p * q, x), pv * qv, 1e-11);
      EXPECT_NEAR(evaluate(poly_pow(q, 3), x), qv * qv * qv, 1e-10);
      EXPECT_NEAR(evaluate(p * 2.5, x), 2.5 * pv, 1e-12);
      std::vector<double> lifted = x;
      lifted.push_back(u(gen));
      EXPECT_NEAR(evaluate(p.lifted(1), lifted), pv, 1e-12);
    }
  }
}

TEST(Polynomial, ExpandsIntervalGenerator) {
  const MultiIndex x0{0}, x1{1}, x2{2};
  const Polynomial x = Polynomial::monomial(x1);
  const Polynomial g = x * (Polynomial::constant(1, 1.0) - x);
  EXPECT_EQ(g, Polynomial(1, {{x1, 1.0}, {x2, -1.0}}));
  EXPECT_EQ(g.degree(), 2);
  EXPECT_EQ(g.coefficient(x0), 0.0);
}

TEST(Polynomial, CancellationErasesTerms) {
  Polynomial p(1, {{MultiIndex{1}, 2.0}});
  p.add_term(MultiIndex{1}, -2.0);
  EXPECT_TRUE(p.is_zero());
  EXPECT_EQ(p.degree(), 0);
  EXPECT_TRUE((Polynomial::univariate(std::vector<double>{1.0, 2.0}) * Polynomial(1)).is_zero());
}

TEST(Polynomial, MismatchedVariablesThrow) {
  EXPECT_THROW(poly_mul(Polynomial(1), Polynomial(2)), ArgumentError);
  EXPECT_THROW(evaluate(Polynomial(2), std::vector<double>{1.0}), ArgumentError);
}

TEST(Preordering, IntervalHasTwoTerms) {
  const auto set = SemialgebraicSet::interval(0.0, 1.0);
  const auto terms = preordering(set);
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_TRUE(terms[0].is_unit());
  EXPECT_EQ(terms[0].halfdeg, 0);
  EXPECT_EQ(terms[1].product, Polynomial(1, {{MultiIndex{1}, 1.0}, {MultiIndex{2}, -1.0}}));
  EXPECT_EQ(terms[1].halfdeg, 1);
}

TEST(Preordering, ProductsOfEveryGeneratorSubset) {
  const Polynomial x = Polynomial::monomial(MultiIndex{1, 0});
  const Polynomial y = Polynomial::monomial(MultiIndex{0, 1});
  const Polynomial g1 = Polynomial::constant(2, 1.0) - x * x;
  const Polynomial g2 = Polynomial::constant(2, 1.0) - y * y;
  const Polynomial g3 = x * y;
  const SemialgebraicSet set(2, {g1, g2, g3}, Box{{-1.0, 1.0}, {-1.0, 1.0}});
  const auto terms = preordering(set);
  ASSERT_EQ(terms.size(), 8u);
  auto gen = oracle::rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t code = 0; code < 8; ++code) {
    const auto& t = terms[code];
    ASSERT_EQ(t.selector.size(), 3u);
    Polynomial expected = Polynomial::constant(2, 1.0);
    const Polynomial* gs[] = {&g1, &g2, &g3};
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(t.selector[j], (code >> j) & 1u);
      if ((code >> j) & 1u) expected = expected * *gs[j];
    }
    const std::vector<double> pt{u(gen), u(gen)};
    EXPECT_NEAR(evaluate(t.product, pt), evaluate(expected, pt), 1e-12);
    EXPECT_EQ(t.halfdeg, (expected.degree() + 1) / 2);
  }
}

TEST(Semialgebraic, RejectsDegenerateBox) {
  EXPECT_THROW(SemialgebraicSet::interval(1.0, 1.0), ArgumentError);
  EXPECT_THROW(validate_box(Box{{0.0, 1.0}, {2.0, -1.0}}), ArgumentError);
  EXPECT_THROW(SemialgebraicSet(2, {Polynomial(1)}, Box{{0.0, 1.0}, {0.0, 1.0}}), ArgumentError);
}
