#pragma once

#include <string>

#include "stoffar/estimator.hpp"
#include "stoffar/objective.hpp"
#include "stoffar/step_history.hpp"

namespace stoffar {

/// How the injected derivative error relates to its budget
/// kappa_D sum_j ||s_{k-j}||^(p+1-i):
///   boundary:     exactly the budget
///   uniform_within: a uniform fraction of it
///   adversarial_violating: violation_factor times the budget
enum class EdaMode { boundary, uniform_within, adversarial_violating };

std::string to_string(EdaMode mode);
EdaMode parse_eda_mode(const std::string& name);

struct EdaSettings {
  double kappa_d = 0.0;
  EdaMode mode = EdaMode::boundary;
  double violation_factor = 2.0;
};

/// Error budget for the i-th derivative: kappa_D sum_j ||s_{k-j}||^(p+1-i).
double eda_budget(const StepHistory& history, double kappa_d, int order);

/// g + e with ||e|| = the scaled gradient budget along a random direction.
Vector eda_perturb_gradient(const Vector& g, const StepHistory& history, const EdaSettings& eda, Rng& rng);

/// H + c (u v' + v u') with unit u, v and c chosen so the spectral norm of
/// the added term equals the scaled Hessian budget.
HessianOperator eda_perturb_hessian(const HessianOperator& h, const StepHistory& history,
                                    const EdaSettings& eda, Rng& rng);

/// Both perturbations applied to an exact estimate; kappa_D = 0 returns the
/// input untouched.
DerivativeEstimate eda_perturb(const DerivativeEstimate& exact, const StepHistory& history,
                               const EdaSettings& eda, Rng& rng);

/// Exact oracles of an objective with errors injected within (or beyond) the
/// explicit dynamic accuracy budget.
class EdaEstimator final : public DerivativeEstimator {
 public:
  EdaEstimator(const Objective& problem, EdaSettings eda) : problem_(problem), eda_(eda) {}

  GradientEstimate gradient(const Vector& x, const EstimateRequest& req, Rng& rng) override;
  HessianEstimate hessian(const Vector& x, const EstimateRequest& req, Rng& rng) override;
  std::string name() const override { return "eda-" + to_string(eda_.mode); }

 private:
  const Objective& problem_;
  EdaSettings eda_;
};

}  // namespace stoffar
