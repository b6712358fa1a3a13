#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "stoffar/profile.hpp"

using namespace stoffar;

TEST(Profile, SingleMethod) {
  CostTable t;
  t.set("A", "p1", 5.0);
  t.set("A", "p2", kUnsolved);
  t.set("A", "p3", 7.0);
  const auto prof = performance_profile(t);
  EXPECT_NEAR(prof.evaluate(0, 1.0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(prof.solved_fraction(0), 2.0 / 3.0, 1e-15);
}

TEST(Profile, TwoMethodsOneProblem) {
  CostTable t;
  t.set("A", "p", 10.0);
  t.set("B", "p", 20.0);
  const auto prof = performance_profile(t);
  EXPECT_EQ(prof.ratio[0][0], 1.0);
  EXPECT_EQ(prof.ratio[0][1], 2.0);
  EXPECT_EQ(prof.evaluate(0, 1.0), 1.0);
  EXPECT_EQ(prof.evaluate(1, 1.0), 0.0);
  EXPECT_EQ(prof.evaluate(1, 1.999), 0.0);
  EXPECT_EQ(prof.evaluate(1, 2.0), 1.0);
  EXPECT_EQ(prof.evaluate(0, 0.5), 0.0);
}

TEST(Profile, HandBuiltTable) {
  // Ratios by hand:  p1: A 1, B 2, C 4;  p2: A inf, B 1, C 1;  p3: A 1, B inf, C 2.
  CostTable t;
  t.set("A", "p1", 1.0);
  t.set("B", "p1", 2.0);
  t.set("C", "p1", 4.0);
  t.set("A", "p2", kUnsolved);
  t.set("B", "p2", 3.0);
  t.set("C", "p2", 3.0);
  t.set("A", "p3", 5.0);
  t.set("B", "p3", kUnsolved);
  t.set("C", "p3", 10.0);
  const auto prof = performance_profile(t);
  EXPECT_EQ(prof.breakpoints, (std::vector<double>{1.0, 2.0, 4.0}));
  const std::vector<std::vector<double>> expected = {
      {2.0 / 3, 2.0 / 3, 2.0 / 3}, {1.0 / 3, 2.0 / 3, 2.0 / 3}, {1.0 / 3, 2.0 / 3, 1.0}};
  for (std::size_t m = 0; m < 3; ++m) {
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(prof.rho[m][i], expected[m][i], 1e-15);
  }
  EXPECT_NEAR(prof.evaluate(2, 3.0), 2.0 / 3, 1e-15);
}

TEST(Profile, ProblemNobodySolved) {
  CostTable t;
  t.set("A", "p1", 1.0);
  t.set("B", "p1", 1.0);
  t.set("A", "p2", kUnsolved);
  t.set("B", "p2", kUnsolved);
  const auto prof = performance_profile(t);
  EXPECT_TRUE(std::isinf(prof.ratio[1][0]));
  EXPECT_EQ(prof.evaluate(0, 1.0), 0.5);  // ties give ratio 1 to both
  EXPECT_EQ(prof.evaluate(1, 1.0), 0.5);
  EXPECT_EQ(prof.solved_fraction(0), 0.5);
}

TEST(Profile, CurvesAreMonotoneAndBounded) {
  CostTable t;
  const std::vector<double> a = {3, 1, 8, 2, kUnsolved, 5};
  const std::vector<double> b = {1, 4, 2, 2, 7, kUnsolved};
  for (std::size_t i = 0; i < a.size(); ++i) {
    t.set("A", "p" + std::to_string(i), a[i]);
    t.set("B", "p" + std::to_string(i), b[i]);
  }
  const auto prof = performance_profile(t);
  for (const auto& curve : prof.rho) {
    for (std::size_t i = 0; i < curve.size(); ++i) {
      EXPECT_LE(curve[i], 1.0);
      if (i > 0) EXPECT_GE(curve[i], curve[i - 1]);
    }
  }
}

TEST(Profile, CsvRoundTrip) {
  std::istringstream in("method,problem,tau\nA,p1,10\nB,p1,inf\nA,p2,unsolved\nB,p2,4\n");
  const auto t = read_costs_csv(in);
  EXPECT_EQ(t.methods, (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(t.problems, (std::vector<std::string>{"p1", "p2"}));
  EXPECT_TRUE(std::isinf(t.cost[0][1]));
  std::ostringstream out;
  write_costs_csv(out, t);
  std::istringstream back(out.str());
  const auto t2 = read_costs_csv(back);
  EXPECT_EQ(t2.cost, t.cost);

  std::ostringstream prof;
  write_profile_csv(prof, performance_profile(t));
  EXPECT_EQ(prof.str().substr(0, prof.str().find('\n')), "theta,A,B");

  std::istringstream bad("method,problem\nA,p1\n");
  EXPECT_THROW(read_costs_csv(bad), std::runtime_error);
}
