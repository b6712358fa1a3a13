#include "stoffar/objectives.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace stoffar {

double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double softplus(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

double ncreg(double x) { return x * x / (1.0 + x * x); }

double ncreg_d1(double x) {
  const double d = 1.0 + x * x;
  return 2.0 * x / (d * d);
}

double ncreg_d2(double x) {
  const double d = 1.0 + x * x;
  return 2.0 * (1.0 - 3.0 * x * x) / (d * d * d);
}

double ncreg_d3(double x) {
  const double d = 1.0 + x * x;
  return -24.0 * x * (1.0 - x * x) / (d * d * d * d);
}

std::string to_string(LossKind kind) {
  return kind == LossKind::sigmoid_ls ? "sigmoid_ls" : "nc_logistic";
}

LossKind parse_loss_kind(const std::string& name) {
  if (name == "sigmoid_ls") return LossKind::sigmoid_ls;
  if (name == "nc_logistic") return LossKind::nc_logistic;
  throw std::invalid_argument("unknown objective kind '" + name + "'");
}

// With phi = sigmoid(t) and psi = phi (1 - phi): phi' = psi, psi' = psi (1 - 2 phi).
double MarginLoss::value(double t, int y) const {
  if (kind == LossKind::sigmoid_ls) {
    const double r = y - sigmoid(t);
    return r * r;
  }
  return softplus(t) - y * t;
}

double MarginLoss::d1(double t, int y) const {
  const double phi = sigmoid(t);
  if (kind == LossKind::sigmoid_ls) return -2.0 * (y - phi) * phi * (1.0 - phi);
  return phi - y;
}

double MarginLoss::d2(double t, int y) const {
  const double phi = sigmoid(t);
  const double psi = phi * (1.0 - phi);
  if (kind == LossKind::sigmoid_ls) return 2.0 * psi * psi - 2.0 * (y - phi) * psi * (1.0 - 2.0 * phi);
  return psi;
}

double MarginLoss::d3(double t, int y) const {
  const double phi = sigmoid(t);
  const double psi = phi * (1.0 - phi);
  const double u = 1.0 - 2.0 * phi;
  if (kind == LossKind::sigmoid_ls) {
    return 6.0 * psi * psi * u - 2.0 * (y - phi) * psi * (u * u - 2.0 * psi);
  }
  return psi * u;
}

double margin_loss_sup(LossKind kind, int order) {
  const MarginLoss loss{kind};
  double best = 0.0;
  for (int y = 0; y <= 1; ++y) {
    for (int i = -40000; i <= 40000; ++i) {
      const double t = 1e-3 * i;
      const double v = order == 1 ? loss.d1(t, y) : order == 2 ? loss.d2(t, y) : loss.d3(t, y);
      best = std::max(best, std::abs(v));
    }
  }
  return best * (1.0 + 1e-6);  // grid slack
}

double ncreg_d3_sup() {
  double best = 0.0;
  for (int i = -20000; i <= 20000; ++i) best = std::max(best, std::abs(ncreg_d3(1e-4 * i)));
  return best * (1.0 + 1e-6);
}

DatasetObjective::DatasetObjective(std::shared_ptr<const SparseDataset> data, LossKind kind, double alpha)
    : FiniteSumObjective(data ? data->num_samples() : 0), data_(std::move(data)), loss_{kind}, alpha_(alpha) {
  if (!data_ || data_->num_samples() == 0) throw std::invalid_argument("DatasetObjective: empty dataset");
  if (!(alpha >= 0.0)) throw std::invalid_argument("DatasetObjective: alpha must be >= 0");
}

std::string DatasetObjective::name() const { return to_string(loss_.kind) + ":" + data_->name(); }

double DatasetObjective::sample_value(const Vector& x, Index i) const {
  const std::array<Index, 1> one{i};
  return batch_value(x, one);
}

Vector DatasetObjective::sample_gradient(const Vector& x, Index i) const {
  const std::array<Index, 1> one{i};
  return batch_gradient(x, one);
}

HessianOperator DatasetObjective::sample_hessian(const Vector& x, Index i) const {
  const std::array<Index, 1> one{i};
  return batch_hessian(x, one);
}

double DatasetObjective::batch_value(const Vector& x, std::span<const Index> batch) const {
  if (x.size() != dimension()) throw DimensionError("DatasetObjective: dimension mismatch");
  double sum = 0.0;
  for (Index i : batch) sum += loss_.value(data_->row_dot(i, x), data_->label(i));
  double out = sum / static_cast<double>(batch.size());
  if (reg_alpha() > 0.0) {
    double r = 0.0;
    for (Index j = 0; j < x.size(); ++j) r += ncreg(x(j));
    out += reg_alpha() * r;
  }
  return out;
}

Vector DatasetObjective::batch_gradient(const Vector& x, std::span<const Index> batch) const {
  if (x.size() != dimension()) throw DimensionError("DatasetObjective: dimension mismatch");
  Vector g = Vector::Zero(x.size());
  for (Index i : batch) data_->row_axpy(i, loss_.d1(data_->row_dot(i, x), data_->label(i)), g);
  g /= static_cast<double>(batch.size());
  if (reg_alpha() > 0.0) {
    for (Index j = 0; j < x.size(); ++j) g(j) += reg_alpha() * ncreg_d1(x(j));
  }
  return g;
}

HessianOperator DatasetObjective::batch_hessian(const Vector& x, std::span<const Index> batch) const {
  if (x.size() != dimension()) throw DimensionError("DatasetObjective: dimension mismatch");
  struct Frozen {
    std::shared_ptr<const SparseDataset> data;
    std::vector<Index> rows;
    std::vector<double> coeff;  // l''(a_i'x) / b
    Vector diag;                // alpha r''(x_j)
  };
  auto fz = std::make_shared<Frozen>();
  fz->data = data_;
  fz->rows.assign(batch.begin(), batch.end());
  fz->coeff.reserve(batch.size());
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  for (Index i : batch) fz->coeff.push_back(loss_.d2(data_->row_dot(i, x), data_->label(i)) * inv_b);
  fz->diag = Vector::Zero(x.size());
  if (reg_alpha() > 0.0) {
    for (Index j = 0; j < x.size(); ++j) fz->diag(j) = reg_alpha() * ncreg_d2(x(j));
  }
  const Index n = x.size();
  auto action = [fz](const Vector& v) -> Vector {
    Vector out = Vector::Zero(v.size());
    for (std::size_t k = 0; k < fz->rows.size(); ++k) {
      const Index i = fz->rows[k];
      fz->data->row_axpy(i, fz->coeff[k] * fz->data->row_dot(i, v), out);
    }
    out += fz->diag.cwiseProduct(v);
    return out;
  };
  auto dense = [fz, n]() -> Matrix {
    Matrix h = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < fz->rows.size(); ++k) {
      const auto idx = fz->data->row_indices(fz->rows[k]);
      const auto val = fz->data->row_values(fz->rows[k]);
      for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = 0; b < idx.size(); ++b) h(idx[a], idx[b]) += fz->coeff[k] * val[a] * val[b];
      }
    }
    h.diagonal() += fz->diag;
    return h;
  };
  return HessianOperator(n, std::move(action), std::move(dense));
}

double DatasetObjective::gradient_lipschitz() const {
  double mean_sq = 0.0;
  for (Index i = 0; i < data_->num_samples(); ++i) mean_sq += std::pow(data_->row_norm(i), 2);
  mean_sq /= static_cast<double>(data_->num_samples());
  return margin_loss_sup(loss_.kind, 2) * mean_sq + 2.0 * reg_alpha();
}

double DatasetObjective::hessian_lipschitz() const {
  double mean_cube = 0.0;
  for (Index i = 0; i < data_->num_samples(); ++i) mean_cube += std::pow(data_->row_norm(i), 3);
  mean_cube /= static_cast<double>(data_->num_samples());
  return margin_loss_sup(loss_.kind, 3) * mean_cube + reg_alpha() * ncreg_d3_sup();
}

QuadraticObjective::QuadraticObjective(Matrix q, Vector b) : q_(std::move(q)), b_(std::move(b)) {
  if (q_.rows() != q_.cols() || q_.rows() != b_.size()) throw DimensionError("QuadraticObjective: shape mismatch");
  if (!q_.isApprox(q_.transpose(), 1e-14)) throw std::invalid_argument("QuadraticObjective: Q must be symmetric");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(q_, Eigen::EigenvaluesOnly);
  lambda_min_ = eig.eigenvalues()(0);
  lambda_max_ = eig.eigenvalues()(eig.eigenvalues().size() - 1);
}

double QuadraticObjective::value(const Vector& x) const { return 0.5 * x.dot(q_ * x) + b_.dot(x); }

Vector QuadraticObjective::gradient(const Vector& x) const { return q_ * x + b_; }

HessianOperator QuadraticObjective::hessian(const Vector&) const { return HessianOperator::from_dense(q_); }

double QuadraticObjective::lower_bound() const {
  if (lambda_min_ <= 0.0) return -std::numeric_limits<double>::infinity();
  return -0.5 * b_.dot(q_.ldlt().solve(b_));
}

std::unique_ptr<QuadraticObjective> random_quadratic(const Vector& eigs, std::uint64_t seed) {
  Rng rng = make_stream(seed, RngStream::init);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Index n = eigs.size();
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = gauss(rng);
  }
  const Matrix u = Eigen::HouseholderQR<Matrix>(a).householderQ();
  Matrix q = u * eigs.asDiagonal() * u.transpose();
  q = 0.5 * (q + q.transpose()).eval();
  Vector b(n);
  for (Index i = 0; i < n; ++i) b(i) = gauss(rng);
  return std::make_unique<QuadraticObjective>(std::move(q), std::move(b));
}

RosenbrockObjective::RosenbrockObjective(Index n) : n_(n) {
  if (n < 2) throw std::invalid_argument("RosenbrockObjective: n must be >= 2");
}

double RosenbrockObjective::value(const Vector& x) const {
  double f = 0.0;
  for (Index i = 0; i + 1 < n_; ++i) {
    const double a = x(i + 1) - x(i) * x(i);
    const double b = 1.0 - x(i);
    f += 100.0 * a * a + b * b;
  }
  return f;
}

Vector RosenbrockObjective::gradient(const Vector& x) const {
  Vector g = Vector::Zero(n_);
  for (Index i = 0; i + 1 < n_; ++i) {
    const double a = x(i + 1) - x(i) * x(i);
    g(i) += -400.0 * x(i) * a - 2.0 * (1.0 - x(i));
    g(i + 1) += 200.0 * a;
  }
  return g;
}

Matrix RosenbrockObjective::hessian_dense(const Vector& x) const {
  Matrix h = Matrix::Zero(n_, n_);
  for (Index i = 0; i + 1 < n_; ++i) {
    h(i, i) += 1200.0 * x(i) * x(i) - 400.0 * x(i + 1) + 2.0;
    h(i, i + 1) += -400.0 * x(i);
    h(i + 1, i) += -400.0 * x(i);
    h(i + 1, i + 1) += 200.0;
  }
  return h;
}

HessianOperator RosenbrockObjective::hessian(const Vector& x) const {
  return HessianOperator::from_dense(hessian_dense(x));
}

double RosenbrockObjective::hessian_lipschitz(double radius) const {
  const double m = static_cast<double>(n_ - 1);
  return std::sqrt(m * (std::pow(2400.0 * radius, 2) + 3.0 * 400.0 * 400.0));
}

double RosenbrockObjective::gradient_lipschitz(double radius) const {
  // |h_ii| <= 1200 R^2 + 400 R + 202, |h_{i,i+1}| <= 400 R.
  const double diag = 1200.0 * radius * radius + 400.0 * radius + 202.0;
  const double off = 400.0 * radius;
  return std::sqrt(static_cast<double>(n_) * diag * diag + 2.0 * static_cast<double>(n_ - 1) * off * off);
}

SyntheticQuadraticSum::SyntheticQuadraticSum(Index n, Index samples, double grad_noise, double hess_noise,
                                             std::uint64_t seed)
    : FiniteSumObjective(samples), n_(n) {
  if (n < 1 || samples < 1) throw std::invalid_argument("SyntheticQuadraticSum: empty problem");
  Rng rng = make_stream(seed, RngStream::init);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix base = Matrix::Identity(n, n);
  for (Index i = 0; i < n; ++i) base(i, i) = 1.0 + static_cast<double>(i) / static_cast<double>(n);
  Vector bvec(n);
  for (Index i = 0; i < n; ++i) bvec(i) = gauss(rng);
  h_.reserve(static_cast<std::size_t>(samples));
  b_.reserve(static_cast<std::size_t>(samples));
  for (Index s = 0; s < samples; ++s) {
    Matrix w(n, n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = i; j < n; ++j) {
        w(i, j) = hess_noise * gauss(rng);
        w(j, i) = w(i, j);
      }
    }
    Vector z(n);
    for (Index i = 0; i < n; ++i) z(i) = grad_noise * gauss(rng);
    h_.push_back(base + w);
    b_.push_back(bvec + z);
  }
  h0_ = Matrix::Zero(n, n);
  b0_ = Vector::Zero(n);
  for (Index s = 0; s < samples; ++s) {
    h0_ += h_[static_cast<std::size_t>(s)];
    b0_ += b_[static_cast<std::size_t>(s)];
  }
  h0_ /= static_cast<double>(samples);
  b0_ /= static_cast<double>(samples);
}

double SyntheticQuadraticSum::sample_value(const Vector& x, Index i) const {
  return 0.5 * x.dot(sample_matrix(i) * x) + sample_vector(i).dot(x);
}

Vector SyntheticQuadraticSum::sample_gradient(const Vector& x, Index i) const {
  return sample_matrix(i) * x + sample_vector(i);
}

HessianOperator SyntheticQuadraticSum::sample_hessian(const Vector&, Index i) const {
  return HessianOperator::from_dense(sample_matrix(i));
}

double SyntheticQuadraticSum::batch_value(const Vector& x, std::span<const Index> batch) const {
  double sum = 0.0;
  for (Index i : batch) sum += sample_value(x, i);
  return sum / static_cast<double>(batch.size());
}

Vector SyntheticQuadraticSum::batch_gradient(const Vector& x, std::span<const Index> batch) const {
  Matrix h = Matrix::Zero(n_, n_);
  Vector b = Vector::Zero(n_);
  for (Index i : batch) {
    h += sample_matrix(i);
    b += sample_vector(i);
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  return inv * (h * x) + inv * b;
}

HessianOperator SyntheticQuadraticSum::batch_hessian(const Vector&, std::span<const Index> batch) const {
  Matrix h = Matrix::Zero(n_, n_);
  for (Index i : batch) h += sample_matrix(i);
  return HessianOperator::from_dense(h / static_cast<double>(batch.size()));
}

}  // namespace stoffar
