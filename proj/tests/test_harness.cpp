#include <gtest/gtest.h>

#include "greedylab/harness.hpp"
#include "greedylab/norm_spec.hpp"
#include "json.hpp"

using namespace greedylab;
using json = nlohmann::json;

namespace {

HarnessConfig small_cfg() {
  HarnessConfig c;
  c.trials = 300;
  c.solver_trials = 20;
  c.estimate_random = 30;
  c.m_max = 2;
  c.tau_grid = {0.5, 1.0};
  return c;
}

}  // namespace

TEST(Harness, EmptyNormListGivesEmptyReport) {
  HarnessConfig c = small_cfg();
  c.norms.clear();
  auto r = run_all(c);
  EXPECT_TRUE(r.empty());
  EXPECT_FALSE(any_fail(r));
  auto j = json::parse(report_json(c, r));
  EXPECT_TRUE(j["reports"].empty());
  EXPECT_EQ(j["summary"]["fail"], 0);
}

TEST(Harness, LpSuitesPass) {
  HarnessConfig c = small_cfg();
  auto r = run_all(c);
  EXPECT_FALSE(r.empty());
  for (const auto& x : r) {
    EXPECT_NE(x.status, CheckStatus::fail) << x.check_id << ' ' << x.oracle << ' ' << x.reason;
    if (x.status == CheckStatus::skipped) EXPECT_EQ(x.check_id, "uniform-A-bound");
  }
}

TEST(Harness, WrongConstantFailsAndReplays) {
  HarnessConfig c = small_cfg();
  c.norms = {"lp:2@C_b=0.5"};
  c.suites = {"m1"};
  auto r = run_all(c);
  ASSERT_TRUE(any_fail(r));
  const CheckReport* bad = nullptr;
  for (const auto& x : r) {
    if (x.status == CheckStatus::fail) {
      bad = &x;
      break;
    }
  }
  ASSERT_NE(bad, nullptr);
  ASSERT_FALSE(bad->violations.empty());
  auto replayed = replay(report_json(c, r), ".");
  ASSERT_FALSE(replayed.empty());
  for (const auto& x : replayed) {
    EXPECT_TRUE(x.violation);
    EXPECT_TRUE(x.bit_identical);
  }
  // A single violation record replays the same way.
  const auto& v = bad->violations.front();
  json rec = {{"lhs", v.lhs}, {"rhs", v.rhs}, {"certificate", json::parse(certificate_json(v.certificate))}};
  auto one = replay(rec.dump(), ".");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one[0].bit_identical);
}

TEST(Harness, ReportIsDeterministic) {
  HarnessConfig c = small_cfg();
  c.norms = {"lp:1", "max:[lp:1,lp:2]"};
  c.suites = {"m2", "s6"};
  EXPECT_EQ(report_json(c, run_all(c)), report_json(c, run_all(c)));
}

TEST(Harness, BadSpecBecomesFailedReport) {
  HarnessConfig c = small_cfg();
  c.norms = {"lp:2", "bogus:1"};
  c.suites = {"p4"};
  auto r = run_all(c);
  ASSERT_TRUE(any_fail(r));
  EXPECT_EQ(r.back().oracle, "bogus:1");
  EXPECT_EQ(r.back().status, CheckStatus::fail);
}

TEST(Harness, UnknownSuiteThrows) {
  EXPECT_THROW(run_suite("zz", "lp:2", small_cfg()), DomainError);
}

TEST(Harness, MissingMetadataSkips) {
  HarnessConfig c = small_cfg();
  auto r = check_theorem_m1("weighted_tail:counterexample", c);
  bool saw_skip = false;
  for (const auto& x : r) {
    EXPECT_NE(x.status, CheckStatus::fail) << x.check_id;
    if (x.check_id == "thm-1.1-upper") {
      EXPECT_EQ(x.status, CheckStatus::skipped);
      saw_skip = true;
    }
  }
  EXPECT_TRUE(saw_skip);
}

TEST(Certificate, JsonRoundTrip) {
  Certificate c;
  c.check = "x";
  c.form = "greedy_vs_benchmark";
  c.norm = "lp:1";
  c.dim = 3;
  c.m = 1;
  c.tau = 0.5;
  c.params = {{"bound", 2.0}, {"tol", 1e-9}};
  c.labels = {{"benchmark", "sigma"}};
  c.vectors = {{"x", {1.0, 1.9, 0.0}}};
  c.sets = {{"Lambda", IndexSet{1}}};
  c.seed = 42;
  auto back = certificate_from_json(certificate_json(c));
  EXPECT_EQ(certificate_json(back), certificate_json(c));
  auto v = evaluate_certificate(back, parse_norm_spec("lp:1", 3));
  EXPECT_TRUE(v.valid);
  EXPECT_DOUBLE_EQ(v.lhs, 1.9);
  EXPECT_DOUBLE_EQ(v.rhs, 2.0);
  EXPECT_FALSE(violates(v, 1e-9));
}

TEST(Certificate, InvalidGreedySetIsFlagged) {
  Certificate c;
  c.form = "greedy_vs_benchmark";
  c.norm = "lp:1";
  c.dim = 3;
  c.m = 1;
  c.tau = 1.0;
  c.params = {{"bound", 1.0}};
  c.labels = {{"benchmark", "sigma"}};
  c.vectors = {{"x", {1.0, 1.9, 0.0}}};
  c.sets = {{"Lambda", IndexSet{1}}};
  EXPECT_FALSE(evaluate_certificate(c, parse_norm_spec("lp:1", 3)).valid);
}

TEST(Output, CsvHasOneRowPerReport) {
  HarnessConfig c = small_cfg();
  c.norms = {"lp:2"};
  c.suites = {"s4"};
  auto r = run_all(c);
  auto csv = report_csv(r);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), r.size() + 1);
  EXPECT_NE(report_svg(r).find("<svg"), std::string::npos);
}
