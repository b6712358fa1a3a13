#include <gtest/gtest.h>

#include "stoffar/config.hpp"

using namespace stoffar;

TEST(Config, DefaultsFollowTheProtocol) {
  const auto rc = parse_run_config("[experiment]\ndataset = synth-a9a\n");
  const auto& e = rc.experiment;
  EXPECT_EQ(e.epsilon, 5e-4);
  EXPECT_EQ(e.runs, 20);
  ASSERT_EQ(e.methods.size(), 5u);
  EXPECT_EQ(e.methods[0].label, "offar2-1");
  EXPECT_EQ(e.methods[3].label, "offar2-500");
  EXPECT_EQ(e.methods[4].label, "wngrad");
  EXPECT_EQ(e.problem.objective, LossKind::nc_logistic);
  EXPECT_EQ(e.problem.alpha, 0.001);
}

TEST(Config, FileAndOverridePrecedence) {
  const std::string text =
      "[experiment]\nruns = 3\nmethods = offar2-1, wngrad\nsubset = 100\n"
      "[offar2]\nsigma0 = 0.5\nsolver = exact_secular\n[output]\ndir = somewhere\nplots = true\n";
  const auto rc = parse_run_config(text, {"experiment.runs=7", "offar2.theta1=3", "wngrad.max_iters=12"});
  EXPECT_EQ(rc.experiment.runs, 7);
  EXPECT_EQ(rc.experiment.problem.subset, 100);
  EXPECT_EQ(rc.experiment.methods[0].sigma0, 0.5);
  EXPECT_EQ(rc.experiment.methods[0].theta1, 3.0);
  EXPECT_EQ(rc.experiment.methods[0].solver.method, SolverMethod::exact_secular);
  EXPECT_EQ(rc.experiment.methods[1].max_iters, 12);
  EXPECT_EQ(rc.experiment.methods[1].sigma0, 0.1);
  EXPECT_EQ(rc.output.dir, "somewhere");
  EXPECT_TRUE(rc.output.plots);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_run_config("[experiment]\nbogus = 1\n"), ConfigError);
  EXPECT_THROW(parse_run_config("[nowhere]\nx = 1\n"), ConfigError);
  EXPECT_THROW(parse_run_config("[experiment]\nruns = many\n"), ConfigError);
  EXPECT_THROW(parse_run_config("[experiment]\nmethods = sgd\n"), ConfigError);
  EXPECT_THROW(parse_run_config("", {"runs=3"}), ConfigError);
  EXPECT_THROW(parse_run_config("[experiment]\nruns = 0\n"), ConfigError);
  EXPECT_THROW(load_run_config("/nonexistent/config.ini"), ConfigError);
}

TEST(Config, SuiteProblems) {
  const std::string text =
      "[experiment]\nsubset = 500\nobjective = sigmoid_ls\n"
      "[problem.a]\ndataset = synth-a9a\n"
      "[problem.b]\nobjective = nc_logistic\nsubset = 200\n";
  const auto sc = parse_suite_config(text, {"problem.b.alpha=0.01"});
  ASSERT_EQ(sc.problems.size(), 2u);
  EXPECT_EQ(sc.problems[0].name, "a");
  EXPECT_EQ(sc.problems[0].subset, 500);
  EXPECT_EQ(sc.problems[0].objective, LossKind::sigmoid_ls);
  EXPECT_EQ(sc.problems[1].subset, 200);
  EXPECT_EQ(sc.problems[1].objective, LossKind::nc_logistic);
  EXPECT_EQ(sc.problems[1].alpha, 0.01);
  EXPECT_THROW(parse_suite_config("[experiment]\nruns = 2\n"), ConfigError);
}
