#pragma once

#include <limits>
#include <stdexcept>
#include <string>

#include "stoffar/hessian_operator.hpp"
#include "stoffar/linalg.hpp"
#include "stoffar/model.hpp"

namespace stoffar {

enum class SolverMethod { closed_form_p1, exact_secular, matrix_free };

/// Largest dimension for which the dense eigendecomposition path is allowed.
inline constexpr Index kDenseMaxDimension = 500;

struct SolverConfig {
  SolverMethod method = SolverMethod::matrix_free;
  double theta1 = 2.0;
  Index max_inner_iters = 1000;
  /// Extra stopping test for matrix_free: ||grad m(s)|| <= krylov_tol * max(1, ||g||).
  /// Infinity means the Taylor-gradient condition alone ends the inner loop.
  double krylov_tol = std::numeric_limits<double>::infinity();
  /// Target for exact_secular: ||grad m(s)|| <= secular_tol * max(1, ||g||).
  double secular_tol = 1e-10;

  void validate() const;
};

struct StepResult {
  Vector s;
  Index hvp_count = 0;
  Index inner_iters = 0;
  StepCheckReport report;
};

/// Raised when no step satisfying both step conditions was found.
class SubproblemError : public std::runtime_error {
 public:
  SubproblemError(const std::string& what, StepResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const StepResult& best() const noexcept { return best_; }

 private:
  StepResult best_;
};

/// s = -g / sigma, the exact minimizer of the degree-1 model.
StepResult solve_p1(const Vector& g, double sigma, double theta1 = 2.0);

/// Global minimizer of g's + s'Hs/2 + sigma/6 ||s||^3 through a dense
/// eigendecomposition and the scalar secular equation (H + lambda I)s = -g,
/// lambda = sigma ||s|| / 2, including the hard case.
StepResult solve_exact_secular(const Vector& g, const HessianOperator& h, double sigma,
                               const SolverConfig& cfg);

/// Lanczos (Krylov) minimization using Hessian products only. The first
/// iterate is the Cauchy point; the subspace grows until the step conditions
/// (and krylov_tol, if finite) hold.
StepResult solve_matrix_free(const Vector& g, const HessianOperator& h, double sigma,
                             const SolverConfig& cfg);

/// Dispatches on the model degree and cfg.method.
StepResult solve_step(const RegularizedModel& model, const SolverConfig& cfg);

/// Upper bound on the norm of any step with nonpositive model decrease when
/// the sampled Hessian has lambda_min >= -kappa_high:
///   2 max(eta, ((p+1)! g_norm / sigma)^(1/p)).
double lagrange_step_bound(double g_norm, double sigma, double kappa_high, double sigma0, int p);

/// eta = max_{i=2..p} [kappa_high (p+1)! / (i! sigma0)]^(1/(p-i+1)); zero for p = 1.
double step_bound_eta(double kappa_high, double sigma0, int p);

}  // namespace stoffar
