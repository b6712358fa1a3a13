#include <cmath>
#include <numbers>
#include <set>

#include <gtest/gtest.h>

#include "stoffar/objectives.hpp"
#include "stoffar/sampling.hpp"

using namespace stoffar;

TEST(BatchTheory, GradientExamples) {
  EXPECT_EQ(batch_size_gradient_theory(1.0, 1.0, 1.0, 1000), 1);
  EXPECT_EQ(batch_size_gradient_theory(1.0, 2.0, 1.0, 1000), 4);
  EXPECT_EQ(batch_size_gradient_theory(1.0, 1.0, 8.0, 1000), 1);
  EXPECT_EQ(batch_size_gradient_theory(1.0, 100.0, 1.0, 1000), 1000);
  EXPECT_FALSE(batch_size_gradient_theory(0.0, 1.0, 1.0, 1000).has_value());
  EXPECT_FALSE(batch_size_gradient_theory(1.0, 1.0, 0.0, 1000).has_value());
}

TEST(BatchTheory, HessianExamples) {
  // ceil(9 e ln 3 / 2) = ceil(13.4385) = 14.
  EXPECT_NEAR(9.0 * std::numbers::e * std::log(3.0) / 2.0, 13.4385, 1e-4);
  EXPECT_EQ(batch_size_hessian_theory(1.0, 1.0, 1.0, 3, 1000), 14);
  EXPECT_EQ(batch_size_hessian_theory(1.0, 0.0, 1.0, 3, 1000), 1);
  // sigma_H = 4 multiplies the raw bound by 16 (215.016); xi -> 64 xi divides it back.
  EXPECT_EQ(batch_size_hessian_theory(1.0, 4.0, 1.0, 3, 100000), 216);
  EXPECT_EQ(batch_size_hessian_theory(1.0, 4.0, 64.0, 3, 100000), 14);
}

TEST(BatchPractical, Examples) {
  EXPECT_EQ(batch_size_practical(0, 1.0, 1000, 123, 1, 200, 50), std::make_pair(Index{200}, Index{50}));
  const auto [bg, bh] = batch_size_practical(1, 1.0, 1000, 123, 1, 200, 50);
  EXPECT_EQ(bg, 200);
  EXPECT_EQ(bh, 50);  // 50 / ln(123) is below the 0.05 N floor
  const auto tiny = batch_size_practical(5, 1e-12, 1000, 123, 1, 200, 50);
  EXPECT_EQ(tiny, std::make_pair(Index{1000}, Index{1000}));
  // m = 50 raises the gradient constant by 50^(4/3).
  const auto big = batch_size_practical(3, 30.0, 100000, 123, 50, 20000, 5000);
  EXPECT_EQ(big.first, static_cast<Index>(std::ceil(20000.0 * std::pow(50.0, 4.0 / 3.0) / std::pow(30.0, 4.0 / 3.0))));
}

TEST(BatchWngrad, Examples) {
  EXPECT_EQ(batch_size_wngrad(0, 123.0, 1000), 50);
  EXPECT_EQ(batch_size_wngrad(3, 0.1, 1000), 50);
  EXPECT_EQ(batch_size_wngrad(3, 0.001, 1000), 1000);
  EXPECT_EQ(batch_size_wngrad(3, 1.0, 100), 5);
  EXPECT_EQ(batch_size_wngrad(3, 0.0, 100), 100);
}

TEST(ClampBatch, GuardsRounding) {
  EXPECT_EQ(clamp_batch(0.2 * 1000, 1000), 200);
  EXPECT_EQ(clamp_batch(0.05 * 1000, 1000), 50);
  EXPECT_EQ(clamp_batch(0.0, 10), 1);
  EXPECT_EQ(clamp_batch(1e300, 10), 10);
}

TEST(DrawBatch, FullAndPartial) {
  Rng rng = make_stream(1, RngStream::estimator);
  const auto full = draw_batch(10, 10, false, rng);
  for (Index i = 0; i < 10; ++i) EXPECT_EQ(full[static_cast<std::size_t>(i)], i);
  for (int t = 0; t < 50; ++t) {
    const auto part = draw_batch(100, 17, false, rng);
    ASSERT_EQ(part.size(), 17u);
    EXPECT_TRUE(std::is_sorted(part.begin(), part.end()));
    EXPECT_EQ(std::set<Index>(part.begin(), part.end()).size(), 17u);
    const auto rep = draw_batch(100, 40, true, rng);
    EXPECT_TRUE(std::is_sorted(rep.begin(), rep.end()));
    EXPECT_LT(rep.back(), 100);
  }
}

TEST(SampleEstimate, FullBatchIsBitwiseExact) {
  const SyntheticQuadraticSum f(6, 50, 1.0, 0.5, 2);
  Rng rng = make_stream(1, RngStream::estimator);
  const Vector x = Vector::LinSpaced(6, -1.0, 1.0);
  const auto est = sample_estimate(f, x, 50, 50, false, rng);
  EXPECT_EQ(est.estimate.gradient, f.gradient(x));
  const Vector v = Vector::Ones(6);
  EXPECT_EQ(est.estimate.hessian->apply(v), f.hessian(x).apply(v));
  EXPECT_EQ(f.counters().snapshot().samples_drawn, 100u);
  EXPECT_EQ(f.counters().snapshot().grad_evals, 50u);
}

TEST(SampleEstimate, HomogeneousSumHasNoNoise) {
  const SyntheticQuadraticSum f(4, 80, 0.0, 0.0, 2);
  Rng rng = make_stream(2, RngStream::estimator);
  const Vector x = Vector::Constant(4, 0.3);
  for (int t = 0; t < 10; ++t) {
    const auto est = sample_estimate(f, x, 7, 3, t % 2 == 0, rng);
    EXPECT_LE((est.estimate.gradient - f.gradient(x)).norm(), 1e-14);
  }
}

TEST(SampleEstimate, GradientMomentBound) {
  // E||g_bar - g||^(3/2) <= sigma_g^(3/2) / b^(3/4), sampled with replacement.
  const SyntheticQuadraticSum f(10, 500, 1.0, 0.0, 4);
  const Vector x = Vector::Zero(10);
  const NoiseConstants nc = estimate_noise_constants(f, x);
  const Vector g = f.gradient(x);
  Rng rng = make_stream(3, RngStream::estimator);
  for (Index b : {1, 8, 64}) {
    double sum = 0.0;
    double sum_sq = 0.0;
    constexpr int kDraws = 10000;
    for (int t = 0; t < kDraws; ++t) {
      const auto idx = draw_batch(500, b, true, rng);
      const double e = std::pow((f.batch_gradient(x, idx) - g).norm(), 1.5);
      sum += e;
      sum_sq += e * e;
    }
    const double mean = sum / kDraws;
    const double se = std::sqrt((sum_sq / kDraws - mean * mean) / kDraws);
    const double bound = std::pow(nc.sigma_g, 1.5) / std::pow(static_cast<double>(b), 0.75);
    EXPECT_LE(mean, bound + 3.0 * se) << "b = " << b;
  }
}

TEST(SampledEstimator, SchedulesAndExactFlag) {
  const SyntheticQuadraticSum f(3, 1000, 1.0, 1.0, 1);
  BatchSchedule s;
  s.kind = ScheduleKind::exact;
  SampledEstimator exact(f, s);
  StepHistory h(1, 2);
  EXPECT_EQ(exact.batch_sizes({0, 2, &h}), std::make_pair(Index{1000}, Index{1000}));
  Rng rng = make_stream(1, RngStream::estimator);
  EXPECT_TRUE(exact.gradient(Vector::Zero(3), {0, 2, &h}, rng).exact);

  s.kind = ScheduleKind::practical;
  SampledEstimator practical(f, s);
  EXPECT_EQ(practical.batch_sizes({0, 2, &h}), std::make_pair(Index{200}, Index{50}));

  s.kind = ScheduleKind::fixed;
  s.fixed_g = 12;
  s.fixed_h = 3;
  SampledEstimator fixed(f, s);
  EXPECT_EQ(fixed.batch_sizes({4, 2, &h}), std::make_pair(Index{12}, Index{3}));

  s.kind = ScheduleKind::theory;
  s.kappa_d = 0.0;
  SampledEstimator theory(f, s);
  EXPECT_EQ(theory.batch_sizes({4, 2, &h}), std::make_pair(Index{1000}, Index{1000}));

  EXPECT_EQ(parse_schedule_kind("wngrad"), ScheduleKind::wngrad);
  EXPECT_THROW(parse_schedule_kind("nope"), std::invalid_argument);
}

TEST(MomentValidation, ZeroNoise) {
  MomentGenerator gen;
  gen.dimension = 3;
  gen.count = 4;
  gen.vector_sample = [](Rng&) -> Vector { return Vector::Zero(3); };
  gen.matrix_sample = [](Rng&) -> Matrix { return Matrix::Zero(3, 3); };
  const auto r = validate_moment_bounds(gen, 100, 1);
  ASSERT_TRUE(r.vector && r.matrix);
  EXPECT_EQ(r.vector->empirical, 0.0);
  EXPECT_EQ(r.matrix->empirical, 0.0);
  EXPECT_TRUE(r.passed());
}

TEST(MomentValidation, IsotropicGaussianVectors) {
  MomentGenerator gen;
  gen.dimension = 4;
  gen.count = 16;
  gen.vector_sample = [](Rng& rng) -> Vector {
    std::normal_distribution<double> n;
    return Vector::NullaryExpr(4, [&] { return n(rng); });
  };
  gen.vector_second_moment = 4.0;
  const auto r = validate_moment_bounds(gen, 10000, 2);
  ASSERT_TRUE(r.vector);
  EXPECT_TRUE(r.vector->passed);
  EXPECT_NEAR(r.vector->bound, std::pow(4.0, 0.75) / std::pow(16.0, 0.75), 1e-12);
}

TEST(MomentValidation, WignerMatrices) {
  MomentGenerator gen;
  gen.dimension = 5;
  gen.count = 32;
  gen.matrix_sample = [](Rng& rng) -> Matrix {
    std::normal_distribution<double> n;
    Matrix a = Matrix::NullaryExpr(5, 5, [&] { return n(rng); });
    return (a + a.transpose()) / 2.0;
  };
  const auto r = validate_moment_bounds(gen, 2000, 3);
  ASSERT_TRUE(r.matrix);
  EXPECT_TRUE(r.matrix->passed);
}
