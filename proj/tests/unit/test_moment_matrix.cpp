#include <gtest/gtest.h>

#include <set>

#include "identities.hpp"
#include "lmoment/errors.hpp"
#include "lmoment/moment_matrix.hpp"
#include "oracles.hpp"

using namespace lmoment;

namespace {

std::map<MultiIndex, double> uniform01(int order) {
  std::map<MultiIndex, double> z;
  for (int k = 0; k <= order; ++k) z[MultiIndex{k}] = 1.0 / (k + 1);
  return z;
}

double min_eig(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

const Polynomial kInterval(1, {{MultiIndex{1}, 1.0}, {MultiIndex{2}, -1.0}});

}  // namespace

TEST(MomentMap, UniformHankel) {
  const Eigen::MatrixXd m = instantiate(moment_map(1, 1), uniform01(2));
  Eigen::Matrix2d expected;
  expected << 1.0, 0.5, 0.5, 1.0 / 3.0;
  EXPECT_TRUE(m.isApprox(expected, 1e-15));
}

TEST(MomentMap, Degenerate) {
  const auto map = moment_map(2, 0);
  EXPECT_EQ(map.size(), 1u);
  ASSERT_EQ(map.entries().size(), 1u);
  EXPECT_EQ(map.entries().begin()->first, MultiIndex({0, 0}));
}

TEST(MomentMap, KeyPositionsMatchBruteForce) {
  const auto map = moment_map(2, 2);
  EXPECT_EQ(map.size(), 6u);
  const auto& pos = map.entries().at(MultiIndex{2, 2});
  std::set<std::pair<std::size_t, std::size_t>> got;
  for (const auto& e : pos) {
    EXPECT_EQ(e.coef, 1.0);
    got.insert({e.row, e.col});
  }
  // (2,0)+(0,2) and (1,1)+(1,1)
  EXPECT_EQ(got, (std::set<std::pair<std::size_t, std::size_t>>{{3, 5}, {4, 4}}));

  // Every upper-triangle position appears exactly once.
  std::set<std::pair<std::size_t, std::size_t>> all;
  std::size_t count = 0;
  for (const auto& [key, entries] : map.entries()) {
    for (const auto& e : entries) {
      all.insert({e.row, e.col});
      ++count;
    }
  }
  EXPECT_EQ(count, 21u);
  EXPECT_EQ(all.size(), 21u);
}

TEST(LocalizingMap, IntervalGeneratorOrderZero) {
  const Eigen::MatrixXd m = instantiate(localizing_map(kInterval, 0), uniform01(2));
  ASSERT_EQ(m.rows(), 1);
  EXPECT_NEAR(m(0, 0), 1.0 / 6.0, 1e-15);
  EXPECT_EQ(localizing_map(kInterval, 3).shift_degree(), 8);
}

TEST(LocalizingMap, UnitPolynomialIsMomentMap) {
  for (int d = 0; d <= 3; ++d) EXPECT_EQ(localizing_map(Polynomial::constant(2, 1.0), d), moment_map(2, d));
}

TEST(LocalizingMap, VanishesAtGeneratorRoot) {
  std::map<MultiIndex, double> z;
  for (int k = 0; k <= 4; ++k) z[MultiIndex{k}] = k == 0 ? 1.0 : 0.0;
  EXPECT_TRUE(instantiate(localizing_map(kInterval, 1), z).isZero(0.0));
}

TEST(LocalizingMap, CoefficientsPerPositionAreThoseOfG) {
  const Polynomial g = identities::ball_generator(2).lifted(1);
  const auto map = localizing_map(g, 2);
  std::map<std::pair<std::size_t, std::size_t>, double> sums;
  std::map<std::pair<std::size_t, std::size_t>, int> counts;
  for (const auto& [key, entries] : map.entries()) {
    for (const auto& e : entries) {
      sums[{e.row, e.col}] += e.coef;
      ++counts[{e.row, e.col}];
    }
  }
  double gsum = 0.0;
  for (const auto& [k, c] : g.terms()) gsum += c;
  for (const auto& [pos, s] : sums) {
    EXPECT_DOUBLE_EQ(s, gsum);
    EXPECT_EQ(counts[pos], static_cast<int>(g.terms().size()));
  }
}

TEST(Instantiate, ZeroAndMissing) {
  std::map<MultiIndex, double> zero;
  for (const auto& k : enumerate_indices(2, 4)) zero[k] = 0.0;
  EXPECT_TRUE(instantiate(moment_map(2, 2), zero).isZero(0.0));
  auto partial = uniform01(1);
  try {
    instantiate(moment_map(1, 1), partial);
    FAIL();
  } catch (const IncompleteDataError& e) {
    ASSERT_FALSE(e.missing_keys().empty());
    EXPECT_EQ(e.missing_keys()[0], MultiIndex{2}.to_string());
  }
}

TEST(Reconstruction, MomentAndLocalizingIdentities) {
  auto gen = oracle::rng(2024);
  for (std::size_t nx = 1; nx <= 2; ++nx) {
    const Polynomial g = identities::ball_generator(nx).lifted(1);
    for (int d = 0; d <= 4; ++d) {
      EXPECT_LE(identities::reconstruction_error(moment_map(nx + 1, d), d, nullptr, 100, gen), 1e-10);
      EXPECT_LE(identities::reconstruction_error(localizing_map(g, d), d, &g, 100, gen), 1e-10);
    }
  }
}

TEST(Reconstruction, HankelStructureIsExact) {
  auto gen = oracle::rng(7);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int d = 0; d <= 4; ++d) EXPECT_TRUE(identities::hankel_exact(n, d, gen)) << n << " " << d;
  }
}

TEST(Positivity, AtomicMeasuresGivePsdBlocks) {
  auto gen = oracle::rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> w(0.1, 1.0);
  const Polynomial g = identities::ball_generator(1).lifted(1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<oracle::WeightedPoint> atoms;
    for (int i = 0; i < 5; ++i) atoms.push_back({{u(gen), u(gen)}, w(gen)});
    const auto z = oracle::atomic_moments(atoms, 8);
    EXPECT_GE(min_eig(instantiate(moment_map(2, 3), z)), -1e-10);
    EXPECT_GE(min_eig(instantiate(localizing_map(g, 3), z)), -1e-10);
  }
}
