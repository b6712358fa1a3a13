#include "stoffar/hessian_operator.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace stoffar {

HessianOperator::HessianOperator(Index n, Action action, DenseBuilder dense, Counters* counters)
    : n_(n), action_(std::make_shared<const Action>(std::move(action))), dense_(std::move(dense)),
      counters_(counters) {}

HessianOperator HessianOperator::from_dense(Matrix h, Counters* counters) {
  auto shared = std::make_shared<const Matrix>(std::move(h));
  const Index n = shared->rows();
  return HessianOperator(
      n, [shared](const Vector& v) -> Vector { return (*shared) * v; },
      [shared]() { return *shared; }, counters);
}

HessianOperator HessianOperator::zero(Index n) {
  return HessianOperator(
      n, [n](const Vector&) -> Vector { return Vector::Zero(n); },
      [n]() -> Matrix { return Matrix::Zero(n, n); });
}

Vector HessianOperator::apply(const Vector& v) const {
  if (v.size() != n_) throw DimensionError("HessianOperator::apply: dimension mismatch");
  if (counters_ != nullptr) counters_->add_hvps(1);
  return (*action_)(v);
}

Matrix HessianOperator::dense() const {
  if (dense_) return dense_();
  Matrix h(n_, n_);
  Vector e = Vector::Zero(n_);
  for (Index j = 0; j < n_; ++j) {
    e(j) = 1.0;
    h.col(j) = (*action_)(e);
    e(j) = 0.0;
  }
  return h;
}

void HessianOperator::charge(std::uint64_t n) const {
  if (counters_ != nullptr) counters_->add_hvps(n);
}

HessianOperator HessianOperator::uncounted() const { return with_counters(nullptr); }

HessianOperator HessianOperator::with_counters(Counters* counters) const {
  HessianOperator copy = *this;
  copy.counters_ = counters;
  return copy;
}

HessianOperator HessianOperator::plus(const HessianOperator& other) const {
  if (other.n_ != n_) throw DimensionError("HessianOperator::plus: dimension mismatch");
  auto a = action_;
  auto b = other.action_;
  DenseBuilder dense;
  if (dense_ && other.dense_) {
    dense = [da = dense_, db = other.dense_]() -> Matrix { return da() + db(); };
  }
  return HessianOperator(
      n_, [a, b](const Vector& v) -> Vector { return (*a)(v) + (*b)(v); }, std::move(dense),
      counters_);
}

double probe_symmetry(const HessianOperator& h, Index trials, std::uint64_t seed) {
  Rng rng = make_stream(seed, RngStream::probe);
  const HessianOperator op = h.uncounted();
  double worst = 0.0;
  for (Index t = 0; t < std::max<Index>(trials, 1); ++t) {
    const Vector u = random_unit_vector(op.dimension(), rng);
    const Vector v = random_unit_vector(op.dimension(), rng);
    const double uhv = u.dot(op.apply(v));
    const double vhu = v.dot(op.apply(u));
    worst = std::max(worst, std::abs(uhv - vhu) / (1.0 + std::abs(uhv)));
  }
  return worst;
}

double probe_linearity(const HessianOperator& h, Index trials, std::uint64_t seed) {
  Rng rng = make_stream(seed, RngStream::probe);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const HessianOperator op = h.uncounted();
  double worst = 0.0;
  for (Index t = 0; t < std::max<Index>(trials, 1); ++t) {
    const Vector u = random_unit_vector(op.dimension(), rng);
    const Vector v = random_unit_vector(op.dimension(), rng);
    const double a = gauss(rng);
    const double b = gauss(rng);
    const Vector hu = op.apply(u);
    const Vector hv = op.apply(v);
    const Vector lhs = op.apply(a * u + b * v);
    const Vector rhs = a * hu + b * hv;
    const double scale = 1.0 + std::abs(a) * hu.norm() + std::abs(b) * hv.norm();
    worst = std::max(worst, (lhs - rhs).norm() / scale);
  }
  return worst;
}

}  // namespace stoffar
