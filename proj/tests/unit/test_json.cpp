#include <gtest/gtest.h>

#include "lmoment/errors.hpp"
#include "lmoment/json_io.hpp"

using lmoment::MultiIndex;
using namespace lmoment;
namespace lj = lmoment::json;
using Json = nlohmann::json;

TEST(Json, PolynomialRoundTrip) {
  const Polynomial p(2, {{MultiIndex{1, 0}, 1.5}, {MultiIndex{0, 2}, -0.25}});
  const Json j = lj::to_json(p);
  EXPECT_EQ(j.at("nvars"), 2);
  EXPECT_EQ(lj::polynomial_from_json(j), p);
}

TEST(Json, SetRoundTrip) {
  const auto set = SemialgebraicSet::interval(-1.0, 2.0);
  const auto back = lj::set_from_json(lj::to_json(set));
  EXPECT_EQ(back.nvars(), 1u);
  EXPECT_EQ(back.box(), set.box());
  ASSERT_EQ(back.inequalities().size(), 1u);
  EXPECT_EQ(back.inequalities()[0], set.inequalities()[0]);
}

TEST(Json, ScenarioAndMoments) {
  const MixtureScenario sc{0.5, {{{0.5}, 1.0}}};
  const auto sc2 = lj::scenario_from_json(lj::to_json(sc));
  EXPECT_EQ(sc2.a, 0.5);
  ASSERT_EQ(sc2.atoms.size(), 1u);
  EXPECT_EQ(sc2.atoms[0].location, std::vector<double>{0.5});

  const auto y = mixture_moments(sc, Box{{0.0, 1.0}}, 6);
  const auto y2 = lj::moment_vector_from_json(lj::to_json(y));
  EXPECT_EQ(y2.entries(), y.entries());
  EXPECT_EQ(y2.max_order(), 6);
}

TEST(Json, SchemaViolations) {
  EXPECT_THROW(lj::polynomial_from_json(Json{{"terms", Json::array()}}), ValidationError);
  EXPECT_THROW(lj::polynomial_from_json(Json::parse(R"({"nvars":1,"terms":[{"exp":[-1],"coef":1}]})")),
               ValidationError);
  EXPECT_THROW(lj::polynomial_from_json(Json::parse(R"({"nvars":2,"terms":[{"exp":[1],"coef":1}]})")),
               ValidationError);
  EXPECT_THROW(lj::set_from_json(Json::parse(R"({"nvars":1,"inequalities":[],"box":[[0]]})")), ValidationError);
  EXPECT_THROW(lj::moment_vector_from_json(Json::parse(R"({"nvars":1,"max_order":1,"entries":"x"})")),
               ValidationError);
  EXPECT_THROW(lj::moment_vector_from_json(
                   Json::parse(R"({"nvars":1,"max_order":2,"entries":[{"exp":[0],"value":1},{"exp":[1],"value":0.5}]})")),
               IncompleteDataError);
}

TEST(Json, ReportCarriesConventionAndTolerances) {
  DetectionReport r;
  r.dmax = 3;
  r.levels.push_back({1, SolveStatus::Feasible, 2.0, -0.5, 1e6, 0.01, 10, ""});
  r.levels.push_back({2, SolveStatus::Infeasible, std::nan(""), 0.3, 1e6, 0.02, 12, "margin"});
  r.conclusion = {ConclusionKind::NoDensityFrom, 2};
  const Json j = lj::to_json(r);
  EXPECT_EQ(j.at("localizing_order"), kLocalizingConvention);
  EXPECT_EQ(j.at("tolerances").at("feas_tol"), 1e-8);
  EXPECT_EQ(j.at("tolerances").at("infeas_threshold"), 1e-6);
  ASSERT_EQ(j.at("levels").size(), 2u);
  EXPECT_EQ(j.at("levels")[1].at("status"), "Infeasible");
  EXPECT_TRUE(j.at("levels")[1].at("rho_d").is_null());
  EXPECT_EQ(j.at("levels")[0].at("margin"), -0.5);
  EXPECT_EQ(j.at("conclusion").at("kind"), "NoDensityFrom");
}

TEST(Json, MapDump) {
  const Json j = lj::to_json(moment_map(1, 1));
  EXPECT_EQ(j.at("size"), 2);
  EXPECT_EQ(j.at("entries").size(), 3u);
}
