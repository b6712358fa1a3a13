#pragma once

#include <string>

#include "stoffar/linalg.hpp"

namespace stoffar {

struct TheoryParams {
  int p = 2;
  double lipschitz = 3.0;  // L_p, at least 3
  double kappa_d = 0.0;
  double sigma0 = 0.01;
  double theta1 = 2.0;
  Index m = 1;
  double kappa_high = 0.0;
  double gamma0 = 0.0;  // E[f(x0) - f_low]
  double e_g0 = 0.0;    // E||G_0||^((p+1)/p)

  void validate() const;
};

struct ChiConstants {
  double chi1 = 0.0;
  double chi2 = 0.0;
  double chi3 = 0.0;
  double chi4 = 0.0;
  double kappa_p = 0.0;
};

ChiConstants chi_constants(int p);

struct ConstantChain {
  ChiConstants chi;
  double kappa_a = 0.0;
  double kappa_b = 0.0;
  double kappa_c = 0.0;
  double kappa_d = 0.0;
  double kappa_e = 0.0;
  double kappa_f = 0.0;
  double kappa_g = 0.0;
  double eta = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double sigma_max = 0.0;
  /// sigma_max with the Lambert factor replaced by its explicit upper bound.
  double sigma_max_bound = 0.0;
};

ConstantChain kappa_chain(const TheoryParams& tp);

struct LogLinearRoots {
  double u1 = 0.0;
  double u2 = 0.0;
};

/// Roots 0 < u1 < u2 of gamma1 ln u + gamma2 u + gamma3 = 0 for gamma1 > 0,
/// gamma2 < 0, gamma3 >= 0 and gamma2 / gamma1 >= -1/3.
LogLinearRoots solve_log_linear(double gamma1, double gamma2, double gamma3);

/// gamma1 ln u + gamma2 u + gamma3.
double log_linear_residual(double gamma1, double gamma2, double gamma3, double u);

/// Expected regularization bound; throws DomainError naming the failed
/// hypothesis when the Lambert argument leaves the branch domain.
double sigma_max(const TheoryParams& tp);

/// (kappa_c + kappa_d m)^(p/(p+1)) sigma_max / (k+1)^(p/(p+1)).
double complexity_bound(const TheoryParams& tp, Index k);
double complexity_bound(const ConstantChain& chain, const TheoryParams& tp, Index k);

/// Constant multiplying sigma_max / (sigma0 (k+1)^(p/(p+1))) in the closed
/// forms stated for p = 1 and p = 2.
double corollary_constant(const TheoryParams& tp);
double corollary_bound(const TheoryParams& tp, double sigma_max, Index k);

/// Multi-line human-readable dump of the whole chain.
std::string describe(const TheoryParams& tp, const ConstantChain& chain);

}  // namespace stoffar
