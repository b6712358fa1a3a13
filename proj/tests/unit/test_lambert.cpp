#include <cmath>
#include <numbers>

#include <boost/math/special_functions/lambert_w.hpp>
#include <gtest/gtest.h>

#include "stoffar/lambert.hpp"
#include "stoffar/linalg.hpp"

using namespace stoffar;

TEST(Lambert, SpecialValues) {
  const double branch = -1.0 / std::numbers::e;
  EXPECT_EQ(lambert_w0(0.0), 0.0);
  EXPECT_NEAR(lambert_w0(branch), -1.0, 1e-7);
  EXPECT_NEAR(lambert_wm1(branch), -1.0, 1e-7);
  EXPECT_NEAR(lambert_w0(std::numbers::e), 1.0, 1e-15);
  EXPECT_THROW(lambert_w0(-0.5), DomainError);
  EXPECT_THROW(lambert_wm1(0.0), DomainError);
  EXPECT_THROW(lambert_wm1(0.1), DomainError);
}

TEST(Lambert, IdentityAndBranchesAgainstBoost) {
  Rng rng = make_stream(1, RngStream::probe);
  std::uniform_real_distribution<double> frac(0.0, 1.0);
  std::uniform_real_distribution<double> logx(-20.0, 20.0);
  const double branch = -1.0 / std::numbers::e;
  for (int t = 0; t < 1000; ++t) {
    const double x0 = t % 2 == 0 ? branch * frac(rng) : std::exp(logx(rng));
    const double w0 = lambert_w0(x0);
    EXPECT_LE(std::abs(w0 * std::exp(w0) - x0), 1e-12 * std::max(1.0, std::abs(x0)));
    EXPECT_GE(w0, -1.0);
    EXPECT_NEAR(w0, boost::math::lambert_w0(x0), 1e-12 * std::max(1.0, std::abs(w0)));

    const double xm = branch * (t % 3 == 0 ? std::exp(-std::exp(logx(rng) / 2.0)) : frac(rng));
    if (xm == 0.0) continue;
    const double wm = lambert_wm1(xm);
    EXPECT_LE(std::abs(wm * std::exp(wm) - xm), 1e-12 * std::max(1.0, std::abs(xm)));
    EXPECT_LE(wm, -1.0);
    EXPECT_NEAR(wm, boost::math::lambert_wm1(xm), 1e-10 * std::abs(wm));
  }
}

TEST(Lambert, NegExpFormAndBound) {
  for (double y : {1.0, 1.5, 3.0, 10.0, 100.0, 1e4, 1e8}) {
    const double v = lambert_wm1_neg_exp(y);
    EXPECT_NEAR(v - std::log(v), y, 1e-12 * y);
    EXPECT_GE(v, 1.0);
    if (y > 1.0) EXPECT_LE(v, lambert_wm1_bound(y - 1.0));
    if (y < 700.0) EXPECT_NEAR(-v, boost::math::lambert_wm1(-std::exp(-y)), 1e-10 * v);
  }
  EXPECT_THROW(lambert_wm1_neg_exp(0.5), DomainError);
}
