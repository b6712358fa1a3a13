#include <cmath>

#include <gtest/gtest.h>

#include "stoffar/lambert.hpp"
#include "stoffar/theory.hpp"

using namespace stoffar;

TEST(Chi, Degree2) {
  const auto c = chi_constants(2);
  EXPECT_NEAR(c.chi1, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(c.chi2, 7.0 / 6.0, 1e-15);
  EXPECT_NEAR(c.chi3, std::pow(0.5, 1.5), 1e-15);
  EXPECT_NEAR(c.chi4, 1.0 + std::pow(0.5, 1.5), 1e-15);
  EXPECT_NEAR(c.kappa_p, 2.0, 1e-15);
}

TEST(Chi, Degrees1And3) {
  const auto c1 = chi_constants(1);
  EXPECT_DOUBLE_EQ(c1.kappa_p, 2.0);
  EXPECT_EQ(c1.chi3, 0.0);
  EXPECT_EQ(c1.chi4, 1.0);
  EXPECT_NEAR(chi_constants(3).kappa_p, 1.81712059283, 1e-10);
}

TEST(KappaChain, Examples) {
  TheoryParams tp;
  tp.p = 2;
  tp.lipschitz = 3.0;
  tp.sigma0 = 1.0;
  tp.theta1 = 2.0;
  const auto c = kappa_chain(tp);
  EXPECT_NEAR(c.kappa_a, 7.0 / 6.0, 1e-15);
  EXPECT_EQ(c.kappa_d, 0.0);
  EXPECT_NEAR(c.kappa_b, 2.0 * std::pow(1.5, 1.5) + std::pow(0.5, 1.5), 1e-14);
  EXPECT_NEAR(c.kappa_c, 7.11036598507972693, 1e-12);
  EXPECT_GE(c.kappa_f, 1.0);
  EXPECT_EQ(c.eta, 0.0);

  tp.kappa_d = 0.5;
  tp.kappa_high = 2.0;
  const auto d = kappa_chain(tp);
  EXPECT_GT(d.kappa_d, 0.0);
  EXPECT_GT(d.kappa_f, c.kappa_f);
  EXPECT_DOUBLE_EQ(d.eta, 6.0);
}

TEST(KappaChain, RejectsInvalidParams) {
  TheoryParams tp;
  tp.lipschitz = 2.0;
  EXPECT_THROW(kappa_chain(tp), std::invalid_argument);
  tp.lipschitz = 3.0;
  tp.theta1 = 1.0;
  EXPECT_THROW(kappa_chain(tp), std::invalid_argument);
}

TEST(LogLinear, WorkedRootPair) {
  const auto r = solve_log_linear(1.0, -1.0 / 3.0, 0.0);
  EXPECT_NEAR(r.u1, 1.85718386020784, 1e-10);
  EXPECT_NEAR(r.u2, 4.53640365497353, 1e-10);
}

TEST(LogLinear, SignPatternAndDomain) {
  const auto r = solve_log_linear(2.0, -0.5, 0.3);
  EXPECT_LT(r.u1, r.u2);
  const auto psi = [](double u) { return log_linear_residual(2.0, -0.5, 0.3, u); };
  EXPECT_NEAR(psi(r.u1), 0.0, 1e-10);
  EXPECT_NEAR(psi(r.u2), 0.0, 1e-10);
  EXPECT_GT(psi(0.5 * (r.u1 + r.u2)), 0.0);
  EXPECT_LT(psi(0.5 * r.u1), 0.0);
  EXPECT_LT(psi(2.0 * r.u2), 0.0);
  EXPECT_THROW(solve_log_linear(1.0, -0.5, 0.0), DomainError);
  EXPECT_THROW(solve_log_linear(1.0, 0.5, 0.0), DomainError);
  // A huge gamma3 / gamma1 underflows e^{-gamma3/gamma1}; u2 must stay finite.
  const auto far = solve_log_linear(1.0, -0.1, 2000.0);
  EXPECT_TRUE(std::isfinite(far.u2));
  EXPECT_NEAR(log_linear_residual(1.0, -0.1, 2000.0, far.u2), 0.0, 1e-8 * 2000.0);
}

TEST(SigmaMax, DefiningResidualAndBounds) {
  for (int p : {1, 2}) {
    for (double kd : {0.0, 0.3}) {
      TheoryParams tp;
      tp.p = p;
      tp.kappa_d = kd;
      tp.gamma0 = 2.0;
      tp.e_g0 = 1.0;
      tp.m = 2;
      const auto c = kappa_chain(tp);
      const double u = c.sigma_max;
      const double psi = log_linear_residual(c.gamma1, c.gamma2, c.gamma3, u);
      const double scale = c.gamma1 * std::abs(std::log(u)) + std::abs(c.gamma2 * u) + c.gamma3;
      EXPECT_LE(std::abs(psi), 1e-6 * scale);
      EXPECT_GE(u, tp.sigma0);
      EXPECT_LE(u, c.sigma_max_bound);
    }
  }
}

TEST(Complexity, NonincreasingAndCorollaries) {
  TheoryParams tp;
  double prev = INFINITY;
  for (Index k : {0, 1, 10, 100, 10000}) {
    const double b = complexity_bound(tp, k);
    EXPECT_LE(b, prev);
    prev = b;
  }
  TheoryParams p1;
  p1.p = 1;
  p1.sigma0 = 1.0;
  EXPECT_NEAR(corollary_constant(p1), std::sqrt(44.0), 1e-14);
  TheoryParams p2;
  p2.p = 2;
  EXPECT_NEAR(corollary_constant(p2), 3.86904423528137, 1e-12);
  EXPECT_THROW(corollary_constant(TheoryParams{.p = 3}), std::invalid_argument);
}
