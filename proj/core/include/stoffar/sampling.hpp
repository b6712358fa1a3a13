#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stoffar/estimator.hpp"
#include "stoffar/objective.hpp"

namespace stoffar {

enum class ScheduleKind { theory, practical, wngrad, fixed, exact };

std::string to_string(ScheduleKind kind);
ScheduleKind parse_schedule_kind(const std::string& name);

struct BatchSchedule {
  ScheduleKind kind = ScheduleKind::practical;
  // theory
  double kappa_d = 1.0;
  double sigma_g = 1.0;
  double sigma_h = 1.0;
  // practical floors as fractions of N; wngrad uses floor_g_frac alone
  // (0.05 in the WNGRAD protocol)
  double floor_g_frac = 0.20;
  double floor_h_frac = 0.05;
  // fixed
  Index fixed_g = 1;
  Index fixed_h = 1;
  bool replacement = false;

  void validate() const;
};

/// ceil(raw) clamped to [1, N]. Values within a few ulps above an integer
/// round down to it, so 0.2 * 1000 gives 200.
Index clamp_batch(double raw, Index population);

/// ceil(sigma_g^2 / (kappa_D xi)^(4/3)) in [1, N]; nullopt when kappa_D or xi
/// is zero (the bound then demands exact derivatives).
std::optional<Index> batch_size_gradient_theory(double kappa_d, double sigma_g, double xi,
                                                Index population);

/// ceil(9 sigma_H^2 e ln(n) / (2 (kappa_D xi)^(2/3))) in [1, N]; requires n >= 2.
std::optional<Index> batch_size_hessian_theory(double kappa_d, double sigma_h, double xi, Index n,
                                               Index population);

/// Practical rule: k = 0 gives (0.20 N, 0.05 N); afterwards
/// (max(c_g / xi^(4/3), 0.20 N), max(c_H / xi^(2/3), 0.05 N)) with
/// c_g = b_g0 m^(4/3) and c_H = b_H0 m^(2/3) / ln(n).
std::pair<Index, Index> batch_size_practical(Index k, double xi, Index population, Index n,
                                             Index memory, Index b_g0, Index b_h0,
                                             double floor_g_frac = 0.20, double floor_h_frac = 0.05);

/// WNGRAD rule: 0.05 N at k = 0, then max(0.05 N, 0.1 / ||s_{k-1}||^2); a zero
/// previous step means a full batch.
Index batch_size_wngrad(Index k, double prev_step_norm, Index population, double floor_frac = 0.05);

/// Batch of b indices out of N, sorted ascending. Without replacement a full
/// batch is exactly 0..N-1.
std::vector<Index> draw_batch(Index population, Index b, bool replacement, Rng& rng);

struct SampledEstimate {
  DerivativeEstimate estimate;
  std::vector<Index> gradient_indices;
  std::vector<Index> hessian_indices;
};

/// Subsampled gradient (and Hessian operator when b_h > 0). Charges b_g
/// gradient evaluations, b_g + b_h drawn samples, and every Hessian product
/// to the problem counters.
SampledEstimate sample_estimate(const FiniteSumObjective& problem, const Vector& x, Index b_g,
                                Index b_h, bool replacement, Rng& rng);

/// Derivative estimator driven by a batch schedule.
class SampledEstimator final : public DerivativeEstimator {
 public:
  SampledEstimator(const FiniteSumObjective& problem, BatchSchedule schedule);

  GradientEstimate gradient(const Vector& x, const EstimateRequest& req, Rng& rng) override;
  HessianEstimate hessian(const Vector& x, const EstimateRequest& req, Rng& rng) override;
  std::string name() const override { return "sampled-" + to_string(schedule_.kind); }

  std::pair<Index, Index> batch_sizes(const EstimateRequest& req) const;
  const BatchSchedule& schedule() const noexcept { return schedule_; }

 private:
  const FiniteSumObjective& problem_;
  BatchSchedule schedule_;
};

/// Per-sample noise constants at x: sigma_g^2 = mean ||grad f_i - grad f||^2
/// and sigma_H^3 = mean ||H_i - H||^3 (spectral norm), over the sample
/// indices given (all samples when empty). Dense Hessians are formed, so
/// this is meant for moderate n.
struct NoiseConstants {
  double sigma_g = 0.0;
  double sigma_h = 0.0;
};
NoiseConstants estimate_noise_constants(const FiniteSumObjective& problem, const Vector& x,
                                        std::span<const Index> indices = {});

/// Monte-Carlo check of the two moment lemmas behind the batch-size rules:
///   E||(1/N) sum z_i||^(3/2) <= (E||z||^2)^(3/4) / N^(3/4)
///   (E||sum Y_i||^q)^(1/q) <= 2 sqrt(e r) ||sum E Y_i^2||^(1/2)
///                             + 4 e r (E max_i ||Y_i||^q)^(1/q),  q = 3, r = max(q, 2 ln n).
/// The right-hand sides use the supplied exact moments where given and
/// Monte-Carlo estimates otherwise.
struct MomentGenerator {
  Index dimension = 2;
  Index count = 1;  // N, number of averaged/summed samples
  std::function<Vector(Rng&)> vector_sample;  // zero mean; may be empty
  std::function<Matrix(Rng&)> matrix_sample;  // zero mean, symmetric; may be empty
  std::optional<double> vector_second_moment;  // E||z||^2
  std::optional<Matrix> matrix_second_moment;  // E Y^2
};

struct MomentCheck {
  double empirical = 0.0;
  double stderr_ = 0.0;  // Monte-Carlo standard error of the empirical mean
  double bound = 0.0;
  bool passed = false;   // empirical <= bound + 3 stderr
};

struct MomentReport {
  std::optional<MomentCheck> vector;  // E||avg||^(3/2)
  std::optional<MomentCheck> matrix;  // (E||sum||^3)^(1/3); stderr propagated
  bool passed() const noexcept {
    return (!vector || vector->passed) && (!matrix || matrix->passed);
  }
};

MomentReport validate_moment_bounds(const MomentGenerator& gen, Index trials, std::uint64_t seed);

}  // namespace stoffar
