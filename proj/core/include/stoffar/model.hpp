#pragma once

#include <optional>

#include "stoffar/hessian_operator.hpp"
#include "stoffar/linalg.hpp"

namespace stoffar {

/// Relative slack applied to both step predicates.
inline constexpr double kStepCheckTolerance = 1e-10;

/// Regularized approximate Taylor model of degree 1 or 2, without the
/// constant term:  g's + [1/2 s'Hs] + sigma/(p+1)! ||s||^(p+1).
class RegularizedModel {
 public:
  /// Degree 1.
  RegularizedModel(Vector g, double sigma);
  /// Degree 2.
  RegularizedModel(Vector g, HessianOperator h, double sigma);

  int degree() const noexcept { return h_ ? 2 : 1; }
  Index dimension() const noexcept { return g_.size(); }
  const Vector& gradient() const noexcept { return g_; }
  const HessianOperator* hessian() const noexcept { return h_ ? &*h_ : nullptr; }
  double sigma() const noexcept { return sigma_; }

 private:
  Vector g_;
  std::optional<HessianOperator> h_;
  double sigma_;
};

struct StepCheckReport {
  double model_delta = 0.0;       // m(s) - m(0)
  double taylor_grad_norm = 0.0;  // ||grad_s T(x, s)||
  double threshold = 0.0;         // theta1 sigma ||s||^p / p!
  bool decrease_ok = false;
  bool grad_ok = false;

  bool passed() const noexcept { return decrease_ok && grad_ok; }
};

/// m(s) - m(0).
double model_delta(const RegularizedModel& model, const Vector& s);

/// Gradient of the unregularized Taylor polynomial at s: g (p=1) or g + Hs (p=2).
Vector taylor_gradient(const RegularizedModel& model, const Vector& s);

/// Evaluates the model-decrease and Taylor-gradient conditions. Hessian
/// products made here are not charged to any counter.
StepCheckReport check_step(const RegularizedModel& model, const Vector& s, double theta1);

}  // namespace stoffar
