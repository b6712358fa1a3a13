#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "stoffar/objectives.hpp"

using namespace stoffar;

namespace {

std::shared_ptr<const SparseDataset> small_dataset() {
  auto ds = std::make_shared<SparseDataset>();
  const std::vector<Index> i0{0, 2};
  const std::vector<double> v0{1.0, -0.5};
  const std::vector<Index> i1{1, 2, 3};
  const std::vector<double> v1{0.3, 2.0, 1.0};
  const std::vector<Index> i2{3};
  const std::vector<double> v2{-1.5};
  ds->add_row(i0, v0, 1);
  ds->add_row(i1, v1, 0);
  ds->add_row(i2, v2, 1);
  ds->set_num_features(4);
  return ds;
}

Vector random_point(Index n, Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  return Vector::NullaryExpr(n, [&] { return g(rng); });
}

}  // namespace

TEST(Sigmoid, Properties) {
  EXPECT_DOUBLE_EQ(sigmoid(0.0), 0.5);
  for (double t : {1.0, 10.0, 50.0}) EXPECT_NEAR(sigmoid(t) + sigmoid(-t), 1.0, 1e-15);
  EXPECT_EQ(sigmoid(-1000.0), 0.0);
  EXPECT_EQ(sigmoid(1000.0), 1.0);
  EXPECT_FALSE(std::isnan(softplus(1000.0)));
  EXPECT_NEAR(softplus(0.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(softplus(800.0), 800.0, 1e-12);
}

TEST(NcReg, Values) {
  EXPECT_EQ(ncreg(0.0), 0.0);
  EXPECT_EQ(ncreg_d1(0.0), 0.0);
  EXPECT_EQ(ncreg_d2(0.0), 2.0);
  EXPECT_DOUBLE_EQ(ncreg(1.0), 0.5);
  EXPECT_DOUBLE_EQ(ncreg_d1(1.0), 0.5);
  EXPECT_DOUBLE_EQ(ncreg_d2(1.0), -0.5);
  for (double x : {-2.0, -0.3, 0.7, 3.0}) {
    const double h = 1e-5;
    EXPECT_NEAR(ncreg_d1(x), (ncreg(x + h) - ncreg(x - h)) / (2 * h), 1e-9);
    EXPECT_NEAR(ncreg_d2(x), (ncreg_d1(x + h) - ncreg_d1(x - h)) / (2 * h), 1e-9);
    EXPECT_NEAR(ncreg_d3(x), (ncreg_d2(x + h) - ncreg_d2(x - h)) / (2 * h), 1e-8);
  }
}

TEST(MarginLoss, DerivativesMatchDifferences) {
  for (auto kind : {LossKind::sigmoid_ls, LossKind::nc_logistic}) {
    const MarginLoss l{kind};
    for (int y : {0, 1}) {
      for (double t : {-5.0, -0.4, 0.0, 1.3, 6.0}) {
        const double h = 1e-5;
        EXPECT_NEAR(l.d1(t, y), (l.value(t + h, y) - l.value(t - h, y)) / (2 * h), 1e-8);
        EXPECT_NEAR(l.d2(t, y), (l.d1(t + h, y) - l.d1(t - h, y)) / (2 * h), 1e-8);
        EXPECT_NEAR(l.d3(t, y), (l.d2(t + h, y) - l.d2(t - h, y)) / (2 * h), 1e-8);
      }
    }
  }
}

TEST(DatasetObjective, SigmoidLsGradientAtOrigin) {
  const auto ds = small_dataset();
  const DatasetObjective f(ds, LossKind::sigmoid_ls);
  const Vector x = Vector::Zero(4);
  for (Index i = 0; i < ds->num_samples(); ++i) {
    Vector a = Vector::Zero(4);
    ds->row_axpy(i, 1.0, a);
    const Vector expected = -0.5 * (ds->label(i) - 0.5) * a;
    EXPECT_TRUE(f.sample_gradient(x, i).isApprox(expected, 1e-15));
  }
}

TEST(DatasetObjective, PerfectFitHasZeroLossAndGradient) {
  // A single sample with label 1 and a huge margin: phi -> 1 exactly.
  auto ds = std::make_shared<SparseDataset>();
  const std::vector<Index> idx{0};
  const std::vector<double> val{1.0};
  ds->add_row(idx, val, 1);
  const DatasetObjective f(ds, LossKind::sigmoid_ls);
  const Vector x = Vector::Constant(1, 100.0);
  EXPECT_EQ(f.value(x), 0.0);
  EXPECT_EQ(f.gradient(x).norm(), 0.0);
}

TEST(DatasetObjective, RegularizerOnlyForLogistic) {
  const auto ds = small_dataset();
  const DatasetObjective ls(ds, LossKind::sigmoid_ls, 0.25);
  const DatasetObjective lg(ds, LossKind::nc_logistic, 0.25);
  const Vector x = Vector::Zero(4);
  // At the origin the logistic Hessian gains 2 alpha on the diagonal.
  const Matrix hl = lg.hessian(x).dense();
  const Matrix hl0 = DatasetObjective(ds, LossKind::nc_logistic, 0.0).hessian(x).dense();
  EXPECT_TRUE((hl - hl0).isApprox(0.5 * Matrix::Identity(4, 4)));
  EXPECT_EQ(ls.alpha(), 0.25);
  const Vector ones = Vector::Ones(4);
  EXPECT_NEAR(lg.value(ones) - DatasetObjective(ds, LossKind::nc_logistic, 0.0).value(ones), 0.25 * 4 * 0.5, 1e-14);
  EXPECT_DOUBLE_EQ(ls.value(ones), DatasetObjective(ds, LossKind::sigmoid_ls, 0.0).value(ones));
}

TEST(DatasetObjective, FiniteDifferences) {
  const auto ds = small_dataset();
  Rng rng = make_stream(1, RngStream::probe);
  for (auto kind : {LossKind::sigmoid_ls, LossKind::nc_logistic}) {
    const DatasetObjective f(ds, kind, 0.1);
    for (int t = 0; t < 20; ++t) {
      const Vector x = random_point(4, rng);
      const Vector g = f.gradient(x);
      const Vector fd = oracle::fd_gradient([&](const Vector& y) { return f.value(y); }, x, 1e-5);
      EXPECT_LE((fd - g).norm(), 1e-7 * std::max(1.0, g.norm()));
      const Vector v = random_unit_vector(4, rng);
      const Vector hv = f.hessian(x).apply(v);
      const Vector fdh = oracle::fd_hvp([&](const Vector& y) { return f.gradient(y); }, x, v, 1e-5);
      EXPECT_LE((fdh - hv).norm(), 1e-6 * std::max(1.0, hv.norm()));
      EXPECT_TRUE(f.hessian(x).dense().isApprox(f.hessian(x).dense().transpose()));
    }
  }
}

TEST(DatasetObjective, BatchOraclesAreMeans) {
  const auto ds = small_dataset();
  const DatasetObjective f(ds, LossKind::nc_logistic);
  const Vector x = Eigen::Vector4d(0.3, -0.2, 0.5, 1.0);
  const std::vector<Index> batch{0, 2, 2};
  const Vector expected = (f.sample_gradient(x, 0) + 2.0 * f.sample_gradient(x, 2)) / 3.0;
  EXPECT_TRUE(f.batch_gradient(x, batch).isApprox(expected, 1e-14));
  const Matrix hexp = (f.sample_hessian(x, 0).dense() + 2.0 * f.sample_hessian(x, 2).dense()) / 3.0;
  EXPECT_TRUE(f.batch_hessian(x, batch).dense().isApprox(hexp, 1e-14));
  EXPECT_EQ(f.gradient(x), f.batch_gradient(x, f.all_indices()));
}

TEST(DatasetObjective, LipschitzConstantsBoundObservedCurvature) {
  const auto ds = small_dataset();
  Rng rng = make_stream(2, RngStream::probe);
  for (auto kind : {LossKind::sigmoid_ls, LossKind::nc_logistic}) {
    const DatasetObjective f(ds, kind, 0.1);
    const double lg = f.gradient_lipschitz();
    const double lh = f.hessian_lipschitz();
    for (int t = 0; t < 30; ++t) {
      const Vector x = random_point(4, rng, 2.0);
      const Vector y = random_point(4, rng, 2.0);
      EXPECT_LE((f.gradient(x) - f.gradient(y)).norm(), lg * (x - y).norm() * (1 + 1e-12));
      const Matrix dh = f.hessian(x).dense() - f.hessian(y).dense();
      EXPECT_LE(dh.operatorNorm(), lh * (x - y).norm() * (1 + 1e-12));
    }
  }
}

TEST(QuadraticObjective, Spectrum) {
  const Vector eigs = Eigen::Vector4d(-2.0, 0.5, 1.0, 3.0);
  const auto q = random_quadratic(eigs, 3);
  EXPECT_NEAR(q->lambda_min(), -2.0, 1e-12);
  EXPECT_NEAR(q->lambda_max(), 3.0, 1e-12);
  EXPECT_TRUE(std::isinf(q->lower_bound()));
  const auto pd = random_quadratic(Eigen::Vector3d(1.0, 2.0, 4.0), 3);
  EXPECT_TRUE(std::isfinite(pd->lower_bound()));
  const Vector xstar = pd->q().ldlt().solve(-pd->gradient(Vector::Zero(3)));
  EXPECT_NEAR(pd->value(xstar), pd->lower_bound(), 1e-12);
}

TEST(Rosenbrock, DerivativesAndMinimum) {
  const RosenbrockObjective f(5);
  EXPECT_EQ(f.value(Vector::Ones(5)), 0.0);
  EXPECT_EQ(f.gradient(Vector::Ones(5)).norm(), 0.0);
  Rng rng = make_stream(3, RngStream::probe);
  for (int t = 0; t < 10; ++t) {
    const Vector x = random_point(5, rng);
    const Vector fd = oracle::fd_gradient([&](const Vector& y) { return f.value(y); }, x, 1e-6);
    EXPECT_LE((fd - f.gradient(x)).norm(), 1e-6 * f.gradient(x).norm());
    EXPECT_TRUE(f.hessian(x).dense().isApprox(f.hessian_dense(x), 1e-14));
    const Vector v = random_unit_vector(5, rng);
    const Vector fdh = oracle::fd_hvp([&](const Vector& y) { return f.gradient(y); }, x, v, 1e-6);
    EXPECT_LE((fdh - f.hessian(x).apply(v)).norm(), 1e-6 * std::max(1.0, fdh.norm()));
  }
}

TEST(Rosenbrock, LipschitzOnBox) {
  const RosenbrockObjective f(3);
  const double r = 1.5;
  const double lh = f.hessian_lipschitz(r);
  Rng rng = make_stream(4, RngStream::probe);
  std::uniform_real_distribution<double> u(-r, r);
  for (int t = 0; t < 200; ++t) {
    const Vector x = Vector::NullaryExpr(3, [&] { return u(rng); });
    const Vector y = Vector::NullaryExpr(3, [&] { return u(rng); });
    EXPECT_LE((f.hessian_dense(x) - f.hessian_dense(y)).operatorNorm(), lh * (x - y).norm());
    EXPECT_LE(f.hessian_dense(x).operatorNorm(), f.gradient_lipschitz(r));
  }
}

TEST(SyntheticQuadraticSum, MeansAreExact) {
  const SyntheticQuadraticSum f(4, 30, 1.0, 0.5, 8);
  const Vector x = Vector::Ones(4);
  EXPECT_TRUE(f.gradient(x).isApprox(f.mean_matrix() * x + f.mean_vector(), 1e-12));
  Matrix sum = Matrix::Zero(4, 4);
  for (Index i = 0; i < 30; ++i) sum += f.sample_matrix(i);
  EXPECT_TRUE((sum / 30.0).isApprox(f.mean_matrix(), 1e-12));
}
