#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stoffar/eda.hpp"
#include "stoffar/objectives.hpp"

using namespace stoffar;

namespace {

StepHistory history_with(std::initializer_list<double> steps, Index m) {
  StepHistory h(m, 2);
  for (double s : steps) h.push(s);
  return h;
}

}  // namespace

TEST(Eda, ZeroKappaIsIdentity) {
  const StepHistory h = history_with({0.3}, 2);
  Rng rng = make_stream(1, RngStream::estimator);
  DerivativeEstimate d;
  d.gradient = Eigen::Vector3d(1, 2, 3);
  d.hessian = HessianOperator::from_dense(Matrix::Identity(3, 3));
  const auto out = eda_perturb(d, h, EdaSettings{}, rng);
  EXPECT_EQ(out.gradient, d.gradient);
  EXPECT_EQ(out.hessian->dense(), d.hessian->dense());
}

TEST(Eda, Budgets) {
  const StepHistory h = history_with({0.5, 2.0}, 2);
  EXPECT_DOUBLE_EQ(eda_budget(h, 3.0, 1), 3.0 * (0.25 + 4.0));
  EXPECT_DOUBLE_EQ(eda_budget(h, 3.0, 2), 3.0 * 2.5);
  EXPECT_THROW(eda_budget(h, 1.0, 3), std::invalid_argument);
}

TEST(Eda, BoundaryModeHitsTheBudget) {
  const StepHistory h = history_with({0.5, 0.1, 0.7}, 3);
  Rng rng = make_stream(2, RngStream::estimator);
  const EdaSettings eda{0.4, EdaMode::boundary};
  const Matrix base = Matrix::Identity(6, 6);
  for (int t = 0; t < 20; ++t) {
    const Vector g = Vector::LinSpaced(6, -1, 1);
    const Vector pg = eda_perturb_gradient(g, h, eda, rng);
    EXPECT_NEAR((pg - g).norm(), eda_budget(h, 0.4, 1), 1e-12 * eda_budget(h, 0.4, 1));
    const auto ph = eda_perturb_hessian(HessianOperator::from_dense(base), h, eda, rng);
    const Matrix diff = ph.dense() - base;
    const double spec = oracle::power_iteration_norm([&](const Vector& v) -> Vector { return diff * v; }, 6);
    EXPECT_NEAR(spec, eda_budget(h, 0.4, 2), 1e-6);
  }
}

TEST(Eda, WithinAndViolatingModes) {
  const StepHistory h = history_with({1.0}, 1);
  Rng rng = make_stream(3, RngStream::estimator);
  const Vector g = Vector::Zero(4);
  for (int t = 0; t < 20; ++t) {
    const Vector within = eda_perturb_gradient(g, h, {1.0, EdaMode::uniform_within}, rng);
    EXPECT_LE(within.norm(), 1.0 + 1e-15);
    const Vector beyond = eda_perturb_gradient(g, h, {1.0, EdaMode::adversarial_violating, 3.0}, rng);
    EXPECT_NEAR(beyond.norm(), 3.0, 1e-12);
  }
  EXPECT_EQ(parse_eda_mode("boundary"), EdaMode::boundary);
  EXPECT_THROW(parse_eda_mode("x"), std::invalid_argument);
}

TEST(EdaEstimator, ChargesFullGradients) {
  const RosenbrockObjective rb(3);
  EdaEstimator est(rb, {0.1, EdaMode::boundary});
  StepHistory h(1, 2);
  Rng rng = make_stream(4, RngStream::estimator);
  const auto g = est.gradient(Vector::Zero(3), {0, 2, &h}, rng);
  EXPECT_FALSE(g.exact);
  EXPECT_NEAR((g.gradient - rb.gradient(Vector::Zero(3))).norm(), 0.1, 1e-14);
  EXPECT_EQ(rb.counters().snapshot().grad_evals, 1u);
}
