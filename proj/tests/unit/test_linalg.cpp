#include <gtest/gtest.h>

#include "stoffar/hessian_operator.hpp"
#include "stoffar/linalg.hpp"
#include "stoffar/objectives.hpp"

using namespace stoffar;

TEST(Linalg, DotExamples) {
  EXPECT_DOUBLE_EQ(dot(Eigen::Vector2d(1, 2), Eigen::Vector2d(3, 4)), 11.0);
  EXPECT_DOUBLE_EQ(dot(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)), 0.0);
  const Vector u = Eigen::Vector3d(1.5, -2.0, 0.25);
  EXPECT_NEAR(dot(u, u), norm(u) * norm(u), 1e-14);
  EXPECT_THROW(dot(Vector::Ones(2), Vector::Ones(3)), DimensionError);
}

TEST(Linalg, NormExamples) {
  EXPECT_DOUBLE_EQ(norm(Eigen::Vector2d(3, 4)), 5.0);
  EXPECT_DOUBLE_EQ(norm(Vector::Zero(4)), 0.0);
  EXPECT_DOUBLE_EQ(norm(Vector::Ones(4)), 2.0);
}

TEST(Linalg, StreamsAreDeterministicAndDistinct) {
  Rng a = make_stream(7, RngStream::estimator);
  Rng b = make_stream(7, RngStream::estimator);
  Rng c = make_stream(7, RngStream::solver);
  const auto x = a();
  EXPECT_EQ(x, b());
  EXPECT_NE(x, c());
}

TEST(Linalg, RandomUnitVector) {
  Rng rng = make_stream(1, RngStream::probe);
  for (int i = 0; i < 20; ++i) EXPECT_NEAR(random_unit_vector(7, rng).norm(), 1.0, 1e-14);
}

TEST(HessianOperator, ProbesOnSimpleOperators) {
  EXPECT_LE(probe_symmetry(HessianOperator::from_dense(Matrix::Identity(3, 3)), 50, 1), 1e-15);
  EXPECT_LE(probe_linearity(HessianOperator::from_dense(Matrix::Identity(3, 3)), 50, 1), 1e-15);
  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 1.0, 2.0;
  EXPECT_LE(probe_symmetry(HessianOperator::from_dense(d), 50, 2), 1e-15);
}

TEST(HessianOperator, ExactObjectiveHessiansAreSymmetric) {
  const RosenbrockObjective rb(6);
  Rng rng = make_stream(3, RngStream::probe);
  for (int t = 0; t < 5; ++t) {
    const Vector x = Vector::NullaryExpr(6, [&] { return std::normal_distribution<double>()(rng); });
    EXPECT_LE(probe_symmetry(rb.hessian(x), 20, 5 + t), 1e-12);
    EXPECT_LE(probe_linearity(rb.hessian(x), 20, 5 + t), 1e-12);
  }
}

TEST(HessianOperator, ChargesEachProduct) {
  Counters counters;
  const auto h = HessianOperator::from_dense(Matrix::Identity(4, 4), &counters);
  h.apply(Vector::Ones(4));
  h.apply(Vector::Ones(4));
  EXPECT_EQ(counters.snapshot().hvp_evals, 2u);
  h.uncounted().apply(Vector::Ones(4));
  h.dense();
  EXPECT_EQ(counters.snapshot().hvp_evals, 2u);
  h.charge(4);
  EXPECT_EQ(counters.snapshot().hvp_evals, 6u);
}

TEST(HessianOperator, DenseWithoutBuilderUsesProducts) {
  Matrix m(2, 2);
  m << 2, 1, 1, 3;
  const HessianOperator h(2, [m](const Vector& v) -> Vector { return m * v; });
  EXPECT_FALSE(h.has_dense_builder());
  EXPECT_TRUE(h.dense().isApprox(m));
  EXPECT_TRUE(h.plus(HessianOperator::from_dense(m)).dense().isApprox(2 * m));
}
