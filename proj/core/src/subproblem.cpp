#include "stoffar/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

namespace stoffar {
namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// Global minimizer of c'y + y'diag(lambda)y/2 + sigma/6 ||y||^3 with lambda
// sorted ascending. Degenerate leading eigenvalues with (numerically) no
// gradient component trigger the hard case, where the multiplier sits at
// -lambda_min and the leftover length goes along the leading eigenvector.
Vector minimize_cubic_eigenbasis(const Vector& lambda, const Vector& c, double sigma) {
  const Index n = lambda.size();
  Vector y = Vector::Zero(n);
  if (n == 0) return y;

  const double cnorm = c.norm();
  const double lmin = lambda(0);
  if (cnorm == 0.0 && lmin >= 0.0) return y;

  const double lo = std::max(0.0, -lmin);
  const double deg_tol = 1e-12 * std::max(1.0, lambda.cwiseAbs().maxCoeff());

  double deg_sq = 0.0;
  double rest_sq = 0.0;
  for (Index i = 0; i < n; ++i) {
    if (lambda(i) - lmin <= deg_tol) {
      deg_sq += c(i) * c(i);
    } else {
      const double t = c(i) / (lambda(i) + lo);
      rest_sq += t * t;
    }
  }

  const double boundary = 2.0 * lo / sigma;
  if (lo > 0.0 && std::sqrt(deg_sq) <= 1e-12 * cnorm && std::sqrt(rest_sq) <= boundary) {
    Index lead = -1;
    for (Index i = 0; i < n; ++i) {
      if (lambda(i) - lmin <= deg_tol) {
        if (lead < 0) lead = i;
      } else {
        y(i) = -c(i) / (lambda(i) + lo);
      }
    }
    const double tail = std::sqrt(std::max(0.0, boundary * boundary - rest_sq));
    y(lead) = c(lead) > 0.0 ? -tail : tail;
    return y;
  }

  // psi(mu) = 2 mu / (sigma ||y(mu)||) - 1 is increasing on (lo, inf).
  auto inv_norm = [&](double mu) {
    double sum = 0.0;
    for (Index i = 0; i < n; ++i) {
      const double d = lambda(i) + mu;
      if (d <= 0.0) {
        if (c(i) != 0.0) return 0.0;
        continue;
      }
      const double t = c(i) / d;
      sum += t * t;
    }
    return sum > 0.0 ? 1.0 / std::sqrt(sum) : std::numeric_limits<double>::infinity();
  };
  auto psi = [&](double mu) { return 2.0 * mu * inv_norm(mu) / sigma - 1.0; };

  double a = lo;
  double b = lo + std::sqrt(0.5 * sigma * cnorm);
  double fa = psi(a);
  double fb = psi(b);
  while (fb < 0.0) {  // only reachable through rounding
    b *= 2.0;
    fb = psi(b);
  }
  double mu = b;
  if (fa >= 0.0) {
    mu = a;
  } else if (fb > 0.0) {
    std::uintmax_t iters = 200;
    const auto bracket = boost::math::tools::toms748_solve(
        psi, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(), iters);
    const double pa = std::abs(psi(bracket.first));
    const double pb = std::abs(psi(bracket.second));
    mu = pa <= pb ? bracket.first : bracket.second;
  }

  for (Index i = 0; i < n; ++i) {
    const double d = lambda(i) + mu;
    y(i) = d > 0.0 ? -c(i) / d : 0.0;
  }
  return y;
}

double cubic_gradient_norm(const Vector& g, const Vector& hs, const Vector& s, double sigma) {
  return (g + hs + 0.5 * sigma * s.norm() * s).norm();
}

}  // namespace

void SolverConfig::validate() const {
  if (!(theta1 > 1.0)) throw std::invalid_argument("SolverConfig: theta1 must exceed 1");
  if (max_inner_iters < 1) throw std::invalid_argument("SolverConfig: max_inner_iters must be >= 1");
  if (!(krylov_tol > 0.0)) throw std::invalid_argument("SolverConfig: krylov_tol must be positive");
  if (!(secular_tol > 0.0)) throw std::invalid_argument("SolverConfig: secular_tol must be positive");
}

StepResult solve_p1(const Vector& g, double sigma, double theta1) {
  const RegularizedModel model(g, sigma);
  StepResult r;
  r.s = -g / sigma;
  r.report = check_step(model, r.s, theta1);
  return r;
}

StepResult solve_exact_secular(const Vector& g, const HessianOperator& h, double sigma,
                               const SolverConfig& cfg) {
  cfg.validate();
  const Index n = g.size();
  if (n > kDenseMaxDimension) {
    throw std::invalid_argument("solve_exact_secular: dimension exceeds the dense limit");
  }
  if (h.dimension() != n) throw DimensionError("solve_exact_secular: Hessian dimension mismatch");

  Matrix dense = h.dense();
  dense = 0.5 * (dense + dense.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(dense);
  if (eig.info() != Eigen::Success) {
    throw std::runtime_error("solve_exact_secular: eigendecomposition failed");
  }
  const Vector coeffs = eig.eigenvectors().transpose() * g;
  const Vector y = minimize_cubic_eigenbasis(eig.eigenvalues(), coeffs, sigma);
  h.charge(static_cast<std::uint64_t>(n));

  StepResult r;
  r.s = eig.eigenvectors() * y;
  r.hvp_count = n;
  r.inner_iters = 1;
  r.report = check_step(RegularizedModel(g, h.uncounted(), sigma), r.s, cfg.theta1);

  const double grad_norm = cubic_gradient_norm(g, dense * r.s, r.s, sigma);
  if (!r.report.passed()) {
    throw SubproblemError("solve_exact_secular: step conditions not met (||grad m|| = " +
                              std::to_string(grad_norm) + ")",
                          r);
  }
  return r;
}

StepResult solve_matrix_free(const Vector& g, const HessianOperator& h, double sigma,
                             const SolverConfig& cfg) {
  cfg.validate();
  const Index n = g.size();
  if (h.dimension() != n) throw DimensionError("solve_matrix_free: Hessian dimension mismatch");
  const RegularizedModel check_model(g, h.uncounted(), sigma);

  StepResult best;
  best.s = Vector::Zero(n);
  const double gnorm = g.norm();
  if (gnorm == 0.0) {
    best.report = check_step(check_model, best.s, cfg.theta1);
    return best;
  }

  const Index limit = std::min<Index>(cfg.max_inner_iters, n);
  std::vector<Vector> basis;
  std::vector<double> alpha;
  std::vector<double> beta;
  basis.reserve(static_cast<std::size_t>(limit) + 1);
  basis.push_back(g / gnorm);

  Index hvps = 0;
  double scale = 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig;
  for (Index j = 0; j < limit; ++j) {
    Vector w = h.apply(basis[j]);
    ++hvps;
    const double a = basis[j].dot(w);
    alpha.push_back(a);
    w -= a * basis[j];
    if (j > 0) w -= beta[j - 1] * basis[j - 1];
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& q : basis) w -= q.dot(w) * q;
    }
    const double b = w.norm();
    scale = std::max({scale, std::abs(a), b});

    const Index k = j + 1;
    Vector diag(k);
    Vector sub(std::max<Index>(k - 1, 0));
    for (Index i = 0; i < k; ++i) diag(i) = alpha[i];
    for (Index i = 0; i + 1 < k; ++i) sub(i) = beta[i];
    eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (eig.info() != Eigen::Success) {
      throw SubproblemError("solve_matrix_free: tridiagonal eigensolver failed", best);
    }
    const Vector coeffs = gnorm * eig.eigenvectors().row(0).transpose();
    const Vector y = eig.eigenvectors() * minimize_cubic_eigenbasis(eig.eigenvalues(), coeffs, sigma);
    const double ynorm = y.norm();

    // Reduced gradient of the Taylor part: gnorm e1 + T y, plus the component
    // b y_k leaving the subspace.
    Vector t = diag.cwiseProduct(y);
    t(0) += gnorm;
    for (Index i = 0; i + 1 < k; ++i) {
      t(i) += sub(i) * y(i + 1);
      t(i + 1) += sub(i) * y(i);
    }
    const double leak = std::abs(b * y(k - 1));
    const double taylor_norm = std::sqrt(t.squaredNorm() + leak * leak);
    const double model_grad = std::sqrt((t + 0.5 * sigma * ynorm * y).squaredNorm() + leak * leak);
    const double threshold = cfg.theta1 * 0.5 * sigma * ynorm * ynorm;
    const bool invariant = b <= 1e-14 * std::max(1.0, scale) || k == n;

    const bool implicit_ok = taylor_norm <= threshold * (1.0 + kStepCheckTolerance) &&
                             model_grad <= cfg.krylov_tol * std::max(1.0, gnorm);
    if (implicit_ok || invariant || j + 1 == limit) {
      Vector s = Vector::Zero(n);
      for (Index i = 0; i < k; ++i) s += y(i) * basis[static_cast<std::size_t>(i)];
      best.s = std::move(s);
      best.hvp_count = hvps;
      best.inner_iters = k;
      best.report = check_step(check_model, best.s, cfg.theta1);
      if (best.report.passed() && (implicit_ok || invariant)) return best;
    }
    if (invariant) break;
    basis.push_back(w / b);
    beta.push_back(b);
  }
  throw SubproblemError("solve_matrix_free: no step met the step conditions within " +
                            std::to_string(limit) + " Lanczos iterations",
                        best);
}

StepResult solve_step(const RegularizedModel& model, const SolverConfig& cfg) {
  if (model.degree() == 1) return solve_p1(model.gradient(), model.sigma(), cfg.theta1);
  switch (cfg.method) {
    case SolverMethod::exact_secular:
      return solve_exact_secular(model.gradient(), *model.hessian(), model.sigma(), cfg);
    case SolverMethod::matrix_free:
      return solve_matrix_free(model.gradient(), *model.hessian(), model.sigma(), cfg);
    case SolverMethod::closed_form_p1:
      break;
  }
  throw std::invalid_argument("solve_step: closed_form_p1 cannot solve a degree-2 model");
}

double step_bound_eta(double kappa_high, double sigma0, int p) {
  if (p < 1) throw std::invalid_argument("step_bound_eta: p must be >= 1");
  if (!(sigma0 > 0.0)) throw std::invalid_argument("step_bound_eta: sigma0 must be positive");
  double eta = 0.0;
  for (int i = 2; i <= p; ++i) {
    const double base = kappa_high * factorial(p + 1) / (factorial(i) * sigma0);
    eta = std::max(eta, std::pow(base, 1.0 / (p - i + 1)));
  }
  return eta;
}

double lagrange_step_bound(double g_norm, double sigma, double kappa_high, double sigma0, int p) {
  if (g_norm < 0.0 || kappa_high < 0.0) {
    throw std::invalid_argument("lagrange_step_bound: inputs must be nonnegative");
  }
  if (!(sigma0 > 0.0) || sigma < sigma0) {
    throw std::invalid_argument("lagrange_step_bound: requires sigma >= sigma0 > 0");
  }
  const double eta = step_bound_eta(kappa_high, sigma0, p);
  const double gterm = std::pow(factorial(p + 1) * g_norm / sigma, 1.0 / p);
  return 2.0 * std::max(eta, gterm);
}

}  // namespace stoffar
