#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "lmoment/errors.hpp"
#include "lmoment/hierarchy.hpp"
#include "lmoment/sdp.hpp"
#include "oracles.hpp"

using namespace lmoment;

namespace {

const MultiIndex kOne{0};
const MultiIndex kZ{1};
const MultiIndex kW{2};

SdpProblem correlation() {
  SdpProblem p;
  p.fixed[kOne] = 1.0;
  p.variables = {kZ};
  LinearMatrixMap m(2, 1);
  m.add(kOne, 0, 0, 1.0);
  m.add(kOne, 1, 1, 1.0);
  m.add(kZ, 0, 1, 1.0);
  p.blocks.push_back({"corr", m, {}});
  p.objective[kZ] = -1.0;
  return p;
}

SdpProblem fixed_block(double a, double b, double c) {
  SdpProblem p;
  p.fixed[kOne] = 1.0;
  LinearMatrixMap m(2, 1);
  if (a != 0.0) m.add(kOne, 0, 0, a);
  if (b != 0.0) m.add(kOne, 0, 1, b);
  if (c != 0.0) m.add(kOne, 1, 1, c);
  p.blocks.push_back({"fixed", m, {}});
  return p;
}

double min_eig(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

}  // namespace

TEST(Sdp, CorrelationExtremePoint) {
  const auto out = solve(correlation());
  ASSERT_EQ(out.status, SolveStatus::Feasible) << out.reason;
  EXPECT_NEAR(out.objective, -1.0, 1e-6);
  EXPECT_NEAR(out.assignment.at(kZ), 1.0, 1e-6);
  EXPECT_LE(out.relative_gap, 1e-6);
}

TEST(Sdp, IndefiniteFixedBlock) {
  const auto p = fixed_block(1.0, 2.0, 1.0);
  EXPECT_NEAR(phase1(p).margin, 1.0, 1e-6);
  const auto out = solve(p);
  EXPECT_EQ(out.status, SolveStatus::Infeasible);
  EXPECT_NEAR(out.phase1_margin, 1.0, 1e-6);
}

TEST(Sdp, IdentityBlock) {
  const auto p = fixed_block(1.0, 0.0, 1.0);
  EXPECT_NEAR(phase1(p).margin, -1.0, 1e-6);
  const auto out = solve(p);
  EXPECT_EQ(out.status, SolveStatus::Feasible);
  EXPECT_NEAR(out.min_block_eigenvalue, 1.0, 1e-12);
  const auto rep = residuals(p, {});
  EXPECT_DOUBLE_EQ(rep.min_eigenvalue, 1.0);
}

TEST(Sdp, AllFixedAgreesWithEigendecomposition) {
  auto gen = oracle::rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const double a = u(gen) + 1.0, b = u(gen), c = u(gen) + 1.0;
    Eigen::Matrix2d m;
    m << a, b, b, c;
    const double lam = min_eig(m);
    const auto p = fixed_block(a, b, c);
    EXPECT_NEAR(phase1(p).margin, -lam, 1e-9);
    const auto out = solve(p);
    if (lam > 1e-6) EXPECT_EQ(out.status, SolveStatus::Feasible);
    if (lam < -1e-6) EXPECT_EQ(out.status, SolveStatus::Infeasible);
  }
}

TEST(Sdp, DeterministicOutcomes) {
  const auto set = SemialgebraicSet::interval(0.0, 1.0);
  const auto gamma = box_lebesgue_moments(set.box(), 8);
  const auto y = mixture_moments({0.6, {{{0.3}, 1.0}}}, set.box(), 8);
  const auto p = assemble_primal(set, gamma, y, 4);
  const auto a = solve(p), b = solve(p);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.phase1_iterations, b.phase1_iterations);
  EXPECT_EQ(a.phase2_iterations, b.phase2_iterations);
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(std::isnan(a.objective) ? 0.0 : a.objective, std::isnan(b.objective) ? 0.0 : b.objective);
  EXPECT_EQ(a.phase1_margin, b.phase1_margin);
}

TEST(Sdp, UpperBoundIsHonoured) {
  auto p = correlation();
  p.upper_bounds[kZ] = 0.5;
  const auto out = solve(p);
  ASSERT_EQ(out.status, SolveStatus::Feasible) << out.reason;
  EXPECT_NEAR(out.assignment.at(kZ), 0.5, 1e-6);
  p.upper_bounds[kZ] = -2.0;
  EXPECT_EQ(solve(p).status, SolveStatus::Infeasible);
}

TEST(Sdp, AddingABlockNeverLowersTheMargin) {
  auto p = correlation();
  p.variables.push_back(kW);
  LinearMatrixMap extra(1, 1);
  extra.add(kW, 0, 0, 1.0);
  p.blocks.push_back({"w", extra, {}});
  const double before = phase1(p).margin;
  LinearMatrixMap tie(2, 1);
  tie.add(kZ, 0, 0, 1.0);
  tie.add(kW, 0, 1, 1.0);
  tie.add(kOne, 1, 1, -0.5);
  p.blocks.push_back({"tie", tie, {}});
  EXPECT_GE(phase1(p).margin, before - 1e-7);
}

TEST(Sdp, Phase1AssignmentCertifiesMargin) {
  const auto set = SemialgebraicSet::interval(0.0, 1.0);
  const auto gamma = box_lebesgue_moments(set.box(), 6);
  const auto y = mixture_moments({0.5, {{{0.5}, 1.0}}}, set.box(), 6);
  const auto p = assemble_primal(set, gamma, y, 3);
  const auto r = phase1(p);
  const auto rep = residuals(p, r.assignment);
  EXPECT_GE(rep.min_scaled_eigenvalue + r.margin, -1e-8);
}

TEST(Sdp, ResidualsReportObjective) {
  const auto set = SemialgebraicSet::interval(0.0, 1.0);
  const auto gamma = box_lebesgue_moments(set.box(), 8);
  const auto p = assemble_primal(set, gamma, gamma, 4);
  std::map<MultiIndex, double> z;
  double expected = 0.0;
  for (const auto& [k, c] : p.fixed) {
    if (p.objective.count(k)) expected += p.objective.at(k) * c;
  }
  auto gen = oracle::rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& k : p.variables) {
    z[k] = u(gen);
    if (p.objective.count(k)) expected += p.objective.at(k) * z[k];
  }
  EXPECT_NEAR(residuals(p, z).objective, expected, 1e-12);
  EXPECT_NEAR(p.objective_value(z), expected, 1e-12);
}

TEST(Sdp, LebesgueWitnessPassesResiduals) {
  const auto set = SemialgebraicSet::interval(0.0, 1.0);
  const auto gamma = box_lebesgue_moments(set.box(), 12);
  const auto p = assemble_primal(set, gamma, gamma, 6);
  const auto z = witness_joint_moments(Polynomial::constant(1, 1.0), set.box(), 12);
  std::map<MultiIndex, double> assignment;
  for (const auto& k : p.variables) assignment[k] = z.at(k);
  EXPECT_GE(residuals(p, assignment).min_eigenvalue, -1e-10);
}

// A pure atom at d=2 still has a PSD completion: the quadrature witness is a
// genuine measure on [0,1] x R. The solver must therefore find an interior point.
TEST(Sdp, PureDiracAtLevelTwoHasACompletion) {
  const auto set = SemialgebraicSet::interval(0.0, 1.0);
  const auto gamma = box_lebesgue_moments(set.box(), 4);
  const auto y = mixture_moments({0.0, {{{0.5}, 1.0}}}, set.box(), 4);
  std::vector<double> yv;
  for (int k = 0; k < 4; ++k) yv.push_back(y.at(MultiIndex{k}));
  const auto witness = oracle::quadrature_witness(yv, 2);
  for (int k = 0; k <= 4; ++k) EXPECT_NEAR(witness.at(MultiIndex{k, 0}), 1.0 / (k + 1), 1e-14);

  const auto p = assemble_primal(set, gamma, y, 2);
  std::map<MultiIndex, double> assignment;
  for (const auto& k : p.variables) assignment[k] = witness.at(k);
  const auto rep = residuals(p, assignment);
  EXPECT_GE(rep.min_eigenvalue, -1e-8 * std::max(1.0, oracle::max_abs(witness)));

  const auto r = phase1(p);
  EXPECT_LT(r.margin, -1e-6);
  EXPECT_EQ(solve(p).status, SolveStatus::Feasible);
}

TEST(Sdp, ConicRoundTrip) {
  const auto set = SemialgebraicSet::interval(0.0, 1.0);
  const auto gamma = box_lebesgue_moments(set.box(), 6);
  const auto y = mixture_moments({0.5, {{{0.3}, 1.0}}}, set.box(), 6);
  const auto p = assemble_primal(set, gamma, y, 3, 4.0);
  std::stringstream ss;
  write_conic(ss, p);
  const std::string first = ss.str();
  EXPECT_EQ(first.rfind("LMOMENT-CONIC 1\n", 0), 0u);
  const auto q = read_conic(ss);
  EXPECT_EQ(q.variables, p.variables);
  EXPECT_EQ(q.fixed, p.fixed);
  EXPECT_EQ(q.objective, p.objective);
  EXPECT_EQ(q.upper_bounds, p.upper_bounds);
  ASSERT_EQ(q.blocks.size(), p.blocks.size());
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    EXPECT_EQ(q.blocks[b].map, p.blocks[b].map);
    EXPECT_EQ(q.blocks[b].congruence, p.blocks[b].congruence);
  }
  std::stringstream again;
  write_conic(again, q);
  EXPECT_EQ(again.str(), first);
}

TEST(Sdp, ConicRejectsOtherVersions) {
  std::stringstream ss("LMOMENT-CONIC 2\nvars 0\n");
  EXPECT_THROW(read_conic(ss), ValidationError);
  std::stringstream truncated("LMOMENT-CONIC 1\nvars 2\n1\n");
  EXPECT_THROW(read_conic(truncated), ValidationError);
}

TEST(Sdp, ValidationCatchesMalformedProblems) {
  auto p = correlation();
  p.fixed[kZ] = 0.0;
  EXPECT_THROW(p.validate(), ValidationError);
  auto q = correlation();
  q.objective[kW] = 1.0;
  EXPECT_THROW(q.validate(), ValidationError);
  auto r = correlation();
  r.blocks[0].congruence = Eigen::MatrixXd::Identity(3, 3);
  EXPECT_THROW(r.validate(), ValidationError);
  SolverConfig c;
  c.barrier_reduction = 1.5;
  EXPECT_THROW(c.validate(), ValidationError);
  c = {};
  c.infeas_threshold = 0.0;
  EXPECT_THROW(c.validate(), ValidationError);
}
