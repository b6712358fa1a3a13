#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stoffar/dataset.hpp"
#include "stoffar/objective.hpp"

namespace stoffar {

/// Logistic function, evaluated without overflow for any t.
double sigmoid(double t);

/// log(1 + e^t) without overflow.
double softplus(double t);

/// Nonconvex regularizer r(x) = x^2 / (1 + x^2) and its derivatives.
double ncreg(double x);
double ncreg_d1(double x);
double ncreg_d2(double x);
double ncreg_d3(double x);

enum class LossKind { sigmoid_ls, nc_logistic };

std::string to_string(LossKind kind);
LossKind parse_loss_kind(const std::string& name);

/// Per-sample loss as a function of the margin t = a'x; derivatives in t.
struct MarginLoss {
  LossKind kind;
  double value(double t, int y) const;
  double d1(double t, int y) const;
  double d2(double t, int y) const;
  double d3(double t, int y) const;
};

/// Binary classification finite sum over a sparse dataset:
///   sigmoid_ls:  f_i = (y_i - phi(a_i'x))^2
///   nc_logistic: f_i = -y_i log phi(a_i'x) - (1-y_i) log(1 - phi(a_i'x))
///                      + alpha sum_j x_j^2 / (1 + x_j^2)
class DatasetObjective final : public FiniteSumObjective {
 public:
  DatasetObjective(std::shared_ptr<const SparseDataset> data, LossKind kind, double alpha = 0.001);

  Index dimension() const override { return data_->num_features(); }
  double lower_bound() const override { return 0.0; }
  std::string name() const override;

  double sample_value(const Vector& x, Index i) const override;
  Vector sample_gradient(const Vector& x, Index i) const override;
  HessianOperator sample_hessian(const Vector& x, Index i) const override;

  double batch_value(const Vector& x, std::span<const Index> batch) const override;
  Vector batch_gradient(const Vector& x, std::span<const Index> batch) const override;
  HessianOperator batch_hessian(const Vector& x, std::span<const Index> batch) const override;

  LossKind kind() const noexcept { return loss_.kind; }
  double alpha() const noexcept { return alpha_; }
  const SparseDataset& data() const noexcept { return *data_; }

  /// Lipschitz constant of the gradient: sup|l''| mean||a_i||^2 + 2 alpha.
  double gradient_lipschitz() const;
  /// Lipschitz constant of the Hessian: sup|l'''| mean||a_i||^3 + alpha sup|r'''|.
  double hessian_lipschitz() const;

 private:
  double reg_alpha() const noexcept { return loss_.kind == LossKind::nc_logistic ? alpha_ : 0.0; }

  std::shared_ptr<const SparseDataset> data_;
  MarginLoss loss_;
  double alpha_;
};

/// sup over t and y in {0,1} of |l^(order)(t)|, by a fine grid on [-40, 40].
double margin_loss_sup(LossKind kind, int order);

/// sup |r'''| of the nonconvex regularizer.
double ncreg_d3_sup();

/// f(x) = x'Qx/2 + b'x.
class QuadraticObjective final : public Objective {
 public:
  QuadraticObjective(Matrix q, Vector b);

  Index dimension() const override { return b_.size(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  HessianOperator hessian(const Vector& x) const override;
  double lower_bound() const override;
  std::string name() const override { return "quadratic"; }

  double lambda_min() const noexcept { return lambda_min_; }
  double lambda_max() const noexcept { return lambda_max_; }
  const Matrix& q() const noexcept { return q_; }

 private:
  Matrix q_;
  Vector b_;
  double lambda_min_;
  double lambda_max_;
};

/// Quadratic with Q = U diag(eigs) U' for a random orthogonal U and b ~ N(0, I).
std::unique_ptr<QuadraticObjective> random_quadratic(const Vector& eigs, std::uint64_t seed);

/// Extended Rosenbrock: sum_i 100 (x_{i+1} - x_i^2)^2 + (1 - x_i)^2.
class RosenbrockObjective final : public Objective {
 public:
  explicit RosenbrockObjective(Index n);

  Index dimension() const override { return n_; }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  HessianOperator hessian(const Vector& x) const override;
  double lower_bound() const override { return 0.0; }
  std::string name() const override { return "rosenbrock" + std::to_string(n_); }

  Matrix hessian_dense(const Vector& x) const;
  /// Hessian Lipschitz constant on the box max_i |x_i| <= radius (Frobenius
  /// norm of the third derivative).
  double hessian_lipschitz(double radius) const;
  /// Gradient Lipschitz constant on the same box (Frobenius norm of the Hessian).
  double gradient_lipschitz(double radius) const;

 private:
  Index n_;
};

/// f_i(x) = x'H_i x / 2 + b_i'x with H_i = H0 + W_i and b_i = b0 + z_i:
/// W_i symmetric with N(0, hess_noise^2) entries, z_i ~ N(0, grad_noise^2 I).
/// The noise is centered over the population so H0, b0 are the exact means.
class SyntheticQuadraticSum final : public FiniteSumObjective {
 public:
  SyntheticQuadraticSum(Index n, Index samples, double grad_noise, double hess_noise, std::uint64_t seed);

  Index dimension() const override { return n_; }
  std::string name() const override { return "synthetic-quadratic-sum"; }

  double sample_value(const Vector& x, Index i) const override;
  Vector sample_gradient(const Vector& x, Index i) const override;
  HessianOperator sample_hessian(const Vector& x, Index i) const override;

  double batch_value(const Vector& x, std::span<const Index> batch) const override;
  Vector batch_gradient(const Vector& x, std::span<const Index> batch) const override;
  HessianOperator batch_hessian(const Vector& x, std::span<const Index> batch) const override;

  const Matrix& sample_matrix(Index i) const { return h_[static_cast<std::size_t>(i)]; }
  const Vector& sample_vector(Index i) const { return b_[static_cast<std::size_t>(i)]; }
  const Matrix& mean_matrix() const noexcept { return h0_; }
  const Vector& mean_vector() const noexcept { return b0_; }

 private:
  Index n_;
  std::vector<Matrix> h_;
  std::vector<Vector> b_;
  Matrix h0_;
  Vector b0_;
};

}  // namespace stoffar
