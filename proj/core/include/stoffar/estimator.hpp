#pragma once

#include <string>

#include "stoffar/hessian_operator.hpp"
#include "stoffar/linalg.hpp"
#include "stoffar/objective.hpp"
#include "stoffar/step_history.hpp"

namespace stoffar {

/// What an estimator may look at when producing derivatives at x_k: only
/// information available before the step is computed.
struct EstimateRequest {
  Index k = 0;
  int degree = 2;
  const StepHistory* history = nullptr;
};

struct GradientEstimate {
  Vector gradient;
  Index batch = 0;
  bool exact = false;
};

struct HessianEstimate {
  HessianOperator hessian;
  Index batch = 0;
};

/// Produces the approximate derivatives of one iteration. The gradient is
/// requested first; the Hessian only when the iteration continues.
class DerivativeEstimator {
 public:
  virtual ~DerivativeEstimator() = default;
  virtual GradientEstimate gradient(const Vector& x, const EstimateRequest& req, Rng& rng) = 0;
  virtual HessianEstimate hessian(const Vector& x, const EstimateRequest& req, Rng& rng) = 0;
  virtual std::string name() const = 0;
};

/// Exact oracles (kappa_D = 0). Charges one full population per gradient and
/// one product per Hessian application.
class ExactEstimator final : public DerivativeEstimator {
 public:
  explicit ExactEstimator(const Objective& problem) : problem_(problem) {}
  GradientEstimate gradient(const Vector& x, const EstimateRequest& req, Rng& rng) override;
  HessianEstimate hessian(const Vector& x, const EstimateRequest& req, Rng& rng) override;
  std::string name() const override { return "exact"; }

 private:
  const Objective& problem_;
};

}  // namespace stoffar
