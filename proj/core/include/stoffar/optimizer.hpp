#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "stoffar/estimator.hpp"
#include "stoffar/objective.hpp"
#include "stoffar/run_record.hpp"
#include "stoffar/step_history.hpp"
#include "stoffar/subproblem.hpp"

namespace stoffar {

/// What a step observer sees: the model of iteration k and the accepted step.
struct StepObservation {
  Index k = 0;
  const Vector& x;
  const RegularizedModel& model;
  const StepResult& step;
};

struct StoffarConfig {
  int degree = 2;  // p, 1 or 2
  double sigma0 = 0.01;
  double theta1 = 2.0;
  double epsilon1 = 5e-4;
  Index memory = 1;  // m
  Index max_iters = 1000;
  SolverConfig solver;
  /// Record ||grad f(x_k)|| each iteration (exact oracle, never used by the method).
  bool trace_exact_gradient = false;
  /// Record exact f(x_k) every this many iterations and at the last one (0 disables).
  Index trace_loss_every = 0;
  /// Starting point; zero vector when absent.
  std::optional<Vector> x0;
  /// Called once per accepted step, before x and sigma are updated.
  std::function<void(const StepObservation&)> on_step;

  void validate() const;
};

/// Iteration state between steps.
struct OptimizerState {
  Vector x;
  double sigma;
  Index k = 0;
  StepHistory history;
};

/// Thrown when the step solver fails; carries the rows produced so far.
class RunError : public std::runtime_error {
 public:
  RunError(const std::string& what, RunRecord partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const RunRecord& partial() const noexcept { return partial_; }

 private:
  RunRecord partial_;
};

/// Objective-function-free adaptive regularization: every step is accepted,
/// sigma grows by the factor (1 + ||s_k||^(p+1)), and the method stops when
/// the approximate gradient norm drops to epsilon1 or after max_iters
/// iterations. f is evaluated only for the optional loss trace.
RunRecord run(const Objective& problem, DerivativeEstimator& estimator, const StoffarConfig& cfg,
              std::uint64_t seed);

}  // namespace stoffar
