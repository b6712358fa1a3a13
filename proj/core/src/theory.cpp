#include "stoffar/theory.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "stoffar/lambert.hpp"
#include "stoffar/subproblem.hpp"

namespace stoffar {
namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

void TheoryParams::validate() const {
  if (p < 1) throw std::invalid_argument("TheoryParams: p must be >= 1");
  if (!(lipschitz >= 3.0)) throw std::invalid_argument("TheoryParams: L_p must be >= 3");
  if (!(sigma0 > 0.0)) throw std::invalid_argument("TheoryParams: sigma0 must be positive");
  if (!(theta1 > 1.0)) throw std::invalid_argument("TheoryParams: theta1 must exceed 1");
  if (m < 1) throw std::invalid_argument("TheoryParams: m must be >= 1");
  if (kappa_d < 0.0 || kappa_high < 0.0 || gamma0 < 0.0 || e_g0 < 0.0) {
    throw std::invalid_argument("TheoryParams: constants must be nonnegative");
  }
}

ChiConstants chi_constants(int p) {
  if (p < 1) throw std::invalid_argument("chi_constants: p must be >= 1");
  ChiConstants c;
  const double pp = p;
  const double expo = (pp + 1.0) / pp;
  for (int i = 1; i <= p; ++i) {
    c.chi1 += i / (factorial(i) * (pp + 1.0));
    c.chi2 += (pp + i - 1.0) / (factorial(i) * (pp + 1.0));
  }
  c.chi4 = 1.0;
  for (int i = 2; i <= p; ++i) {
    c.chi3 += std::pow((i - 1.0) / (factorial(i - 1) * pp), expo);
    c.chi4 += std::pow((pp - i + 1.0) / (factorial(i - 1) * pp), expo);
  }
  c.kappa_p = std::pow(2.0 * pp, 1.0 / pp);
  return c;
}

ConstantChain kappa_chain(const TheoryParams& tp) {
  tp.validate();
  ConstantChain c;
  c.chi = chi_constants(tp.p);
  const double p = tp.p;
  const double m = static_cast<double>(tp.m);
  const double expo = (p + 1.0) / p;
  const double s0 = tp.sigma0;
  const double s0e = std::pow(s0, expo);
  const double ls0 = std::log(s0);
  const double ln2 = std::numbers::ln2;
  const double fp1 = factorial(tp.p + 1);
  const double kd = tp.kappa_d;
  const double two_inv_p = std::pow(2.0, 1.0 / p);
  const double two_mp2 = std::pow(2.0, (m * p + 2.0) / p);

  c.kappa_a = tp.lipschitz / fp1 + c.chi.chi1;
  c.kappa_b = c.chi.kappa_p * std::pow(tp.lipschitz / factorial(tp.p), expo) + c.chi.chi3;
  c.kappa_c = two_inv_p / s0e * (c.kappa_b + std::pow(tp.theta1, expo) / std::pow(factorial(tp.p), expo) * s0e);
  c.kappa_d = std::pow(2.0, (m * p + 1.0) / p) * c.chi.kappa_p * kd * c.chi.chi4 / s0e;
  c.eta = step_bound_eta(tp.kappa_high, s0, tp.p);

  const double lead = std::pow(2.0, p + 1.0) * std::pow(fp1, expo);
  const double eta_term = 1.0 + std::pow(2.0, p + 1.0) * std::pow(c.eta, p + 1.0);
  c.kappa_e = lead * (two_inv_p * (kd / s0e + tp.e_g0 / s0e) +
                      two_inv_p * c.kappa_d * (ln2 * (m + 1.0) / 2.0 - ls0) -
                      two_inv_p * c.kappa_c * ls0 +
                      kd * two_mp2 * m / s0e * (ln2 * (m - 1.0) / 2.0 - ls0)) -
              eta_term * ls0;
  c.kappa_f = eta_term + lead / s0e *
                             (kd * two_mp2 * m + two_mp2 * c.chi.chi4 * kd * c.chi.kappa_p * m +
                              std::pow(2.0, 2.0 / p) * c.kappa_c);

  c.gamma1 = c.kappa_a * c.kappa_f + kd * c.chi.chi2 * c.kappa_f;
  c.gamma2 = -1.0 / fp1;
  c.gamma3 = tp.gamma0 + s0 / fp1 + c.kappa_a * c.kappa_e + kd * c.chi.chi2 * (1.0 + c.kappa_e);
  c.kappa_g = c.gamma3 / c.gamma1;

  // sigma_max = -(p+1)! gamma1 W_{-1}(-e^{-y}) with y = kappa_g + ln((p+1)! gamma1);
  // solved in log space so that huge kappa_g does not underflow.
  const double y = c.kappa_g + std::log(fp1 * c.gamma1);
  if (!(y >= 1.0)) {
    throw DomainError("sigma_max: Lambert argument outside [-1/e, 0) (needs kappa_g + ln((p+1)! gamma1) >= 1; "
                      "gamma2/gamma1 >= -1/3 or gamma3 >= 0 violated)");
  }
  c.sigma_max = fp1 * c.gamma1 * lambert_wm1_neg_exp(y);
  c.sigma_max_bound = fp1 * c.gamma1 * lambert_wm1_bound(y - 1.0);
  return c;
}

double log_linear_residual(double gamma1, double gamma2, double gamma3, double u) {
  return gamma1 * std::log(u) + gamma2 * u + gamma3;
}

LogLinearRoots solve_log_linear(double gamma1, double gamma2, double gamma3) {
  if (!(gamma1 > 0.0) || !(gamma2 < 0.0) || !(gamma3 >= 0.0)) {
    throw DomainError("solve_log_linear: requires gamma1 > 0, gamma2 < 0, gamma3 >= 0");
  }
  const double ratio = gamma2 / gamma1;
  if (ratio < -1.0 / 3.0) throw DomainError("solve_log_linear: requires gamma2/gamma1 >= -1/3");
  const double arg = ratio * std::exp(-gamma3 / gamma1);
  LogLinearRoots r;
  r.u1 = lambert_w0(arg) / ratio;
  if (arg == 0.0 || std::log(-ratio) - gamma3 / gamma1 < -700.0) {
    // e^{-gamma3/gamma1} underflows: use -W_{-1}(-e^{-y}) with y = gamma3/gamma1 - ln(-ratio).
    r.u2 = -lambert_wm1_neg_exp(gamma3 / gamma1 - std::log(-ratio)) / ratio;
  } else {
    r.u2 = lambert_wm1(arg) / ratio;
  }
  return r;
}

double sigma_max(const TheoryParams& tp) { return kappa_chain(tp).sigma_max; }

double complexity_bound(const ConstantChain& chain, const TheoryParams& tp, Index k) {
  if (k < 0) throw std::invalid_argument("complexity_bound: k must be >= 0");
  const double e = tp.p / (tp.p + 1.0);
  return std::pow(chain.kappa_c + chain.kappa_d * static_cast<double>(tp.m), e) * chain.sigma_max /
         std::pow(static_cast<double>(k) + 1.0, e);
}

double complexity_bound(const TheoryParams& tp, Index k) { return complexity_bound(kappa_chain(tp), tp, k); }

double corollary_constant(const TheoryParams& tp) {
  tp.validate();
  const double m = static_cast<double>(tp.m);
  const double kd = tp.kappa_d;
  if (tp.p == 1) {
    return std::sqrt(4.0 * tp.lipschitz * tp.lipschitz + 2.0 * tp.theta1 * tp.theta1 * tp.sigma0 * tp.sigma0 +
                     std::pow(2.0, m + 2.0) * kd * m);
  }
  if (tp.p == 2) {
    const double inner = std::pow(tp.lipschitz, 1.5) / std::sqrt(2.0) + std::sqrt(2.0) / 2.0 +
                         std::pow(tp.theta1, 1.5) / std::pow(2.0, 1.5) +
                         std::pow(2.0, m - 1.0) * (4.0 + std::sqrt(2.0)) * kd * m;
    return std::cbrt(2.0 * inner * inner);
  }
  throw std::invalid_argument("corollary_constant: closed forms exist for p = 1 and p = 2 only");
}

double corollary_bound(const TheoryParams& tp, double sigma_max_value, Index k) {
  const double e = tp.p / (tp.p + 1.0);
  return corollary_constant(tp) * sigma_max_value / (tp.sigma0 * std::pow(static_cast<double>(k) + 1.0, e));
}

std::string describe(const TheoryParams& tp, const ConstantChain& c) {
  std::ostringstream out;
  out.precision(12);
  out << "p = " << tp.p << ", L = " << tp.lipschitz << ", kappa_D = " << tp.kappa_d << ", sigma0 = " << tp.sigma0
      << ", theta1 = " << tp.theta1 << ", m = " << tp.m << ", kappa_high = " << tp.kappa_high
      << ", Gamma0 = " << tp.gamma0 << ", E|G0|^((p+1)/p) = " << tp.e_g0 << '\n';
  out << "chi1 = " << c.chi.chi1 << "\nchi2 = " << c.chi.chi2 << "\nchi3 = " << c.chi.chi3
      << "\nchi4 = " << c.chi.chi4 << "\nkappa_p = " << c.chi.kappa_p << '\n';
  out << "kappa_a = " << c.kappa_a << "\nkappa_b = " << c.kappa_b << "\nkappa_c = " << c.kappa_c
      << "\nkappa_d = " << c.kappa_d << "\nkappa_e = " << c.kappa_e << "\nkappa_f = " << c.kappa_f
      << "\nkappa_g = " << c.kappa_g << "\neta = " << c.eta << '\n';
  out << "gamma1 = " << c.gamma1 << "\ngamma2 = " << c.gamma2 << "\ngamma3 = " << c.gamma3 << '\n';
  out << "sigma_max = " << c.sigma_max << "\nsigma_max (explicit bound) = " << c.sigma_max_bound << '\n';
  if (tp.p == 1 || tp.p == 2) out << "corollary constant = " << corollary_constant(tp) << '\n';
  return out.str();
}

}  // namespace stoffar
