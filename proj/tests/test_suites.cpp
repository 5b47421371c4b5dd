#include "plg/suites.hpp"

#include <gtest/gtest.h>

using namespace plg;

namespace {

RunConfig config(std::string pair, std::vector<std::string> checks = {}) {
  RunConfig c;
  c.pair = std::move(pair);
  c.checks = std::move(checks);
  return c;
}

}  // namespace

TEST(Suites, EveryKnobBreaksItsCheck) {
  for (const auto& [knob, check] : corruption_knobs()) {
    RunConfig c = config("su11", {check});
    c.samples = 5;
    c.corrupt = knob;
    RunOutcome out = run(c);
    ASSERT_EQ(out.results.size(), 1u) << knob;
    EXPECT_FALSE(out.pass) << knob;
    EXPECT_GT(out.results[0].max_residual, 1e-3) << knob;
    EXPECT_EQ(out.results[0].details["corruption"], knob);
  }
}

TEST(Suites, CleanRunOnSu21) {
  RunConfig c = config("su21");
  c.samples = 20;
  RunOutcome out = run(c);
  EXPECT_TRUE(out.pass);
  std::vector<std::string> got;
  for (const auto& r : out.results) got.push_back(r.check);
  std::vector<std::string> want = {"jacobi", "invariance", "cocycle", "delta_consistency", "bialgebra_axioms",
                                   "coboundary", "uniqueness", "manin", "deform", "twist"};
  EXPECT_EQ(got, want);
  for (const auto& r : out.report["results"]) {
    EXPECT_EQ(r["details"]["pair"], "su21");
    EXPECT_EQ(r["details"]["seed"], 42);
  }
}

TEST(Suites, ReportsAreReproducible) {
  RunConfig c = config("su11", {"invariance", "cocycle", "semiclassical"});
  c.samples = 10;
  c.seed = 1234;
  json a = run(c).report, b = run(c).report;
  a["meta"].erase("timestamp");
  b["meta"].erase("timestamp");
  EXPECT_EQ(a.dump(), b.dump());
  c.seed = 1235;
  json d = run(c).report;
  d["meta"].erase("timestamp");
  EXPECT_NE(a.dump(), d.dump());
}

TEST(Suites, MetaBlock) {
  json r = run(config("su11", {"jacobi"})).report;
  EXPECT_EQ(r["meta"]["version"], kVersion);
  EXPECT_EQ(r["meta"]["prng"], Rng::algorithm);
  EXPECT_EQ(r["meta"]["exp_method"], kExpMethod);
  EXPECT_EQ(r["meta"]["tolerances"]["algebraic"], 1e-9);
  EXPECT_EQ(r["meta"]["timestamp"].get<std::string>().size(), 20u);
  EXPECT_TRUE(r["corrupt"].is_null());
}

TEST(Suites, ConfigurationErrors) {
  EXPECT_THROW(run(config("su11", {"nope"})), ConfigError);
  EXPECT_THROW(run(config("su21", {"semiclassical"})), ConfigError);
  EXPECT_THROW(run(config("no_such_pair")), ConfigError);
  RunConfig c = config("su11");
  c.corrupt = "bogus";
  EXPECT_THROW(run(c), ConfigError);
  c = config("supq1");
  c.p = kMaxCatalogP + 1;
  EXPECT_THROW(run(c), ConfigError);
  c = config("su21");
  c.p = 2;
  EXPECT_THROW(run(c), ConfigError);
  c = config("su11");
  c.tol.algebraic = 0;
  EXPECT_THROW(run(c), ConfigError);
}

TEST(Suites, FamilyPairSelectsP) {
  RunConfig c = config("supq1", {"jacobi"});
  c.p = 3;
  Subject s = load_subject(c);
  EXPECT_EQ(s.mp().name(), "su31");
  EXPECT_TRUE(run(c, s).pass);
}

TEST(Suites, ToleranceFromConfigIsHonored) {
  RunConfig c = config("su11", {"invariance"});
  c.corrupt = "psi_scale";
  c.tol.algebraic = 1.0;
  EXPECT_TRUE(run(c).pass);
}

TEST(Suites, TextSummary) {
  RunConfig c = config("su11", {"jacobi", "coboundary"});
  Subject s = load_subject(c);
  std::string t = text_summary(run(c, s), s);
  EXPECT_NE(t.find("PASS jacobi"), std::string::npos);
  EXPECT_NE(t.find("delta(P2) = 2 P1^P2"), std::string::npos);
  EXPECT_NE(t.find("ALL PASS"), std::string::npos);
}
