#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stoffar/counters.hpp"
#include "stoffar/hessian_operator.hpp"
#include "stoffar/linalg.hpp"

namespace stoffar {

/// Approximate derivatives at an iterate: the gradient estimate and, for
/// degree-2 models, a Hessian operator.
struct DerivativeEstimate {
  Vector gradient;
  std::optional<HessianOperator> hessian;
  Index batch_gradient = 0;
  Index batch_hessian = 0;
  bool exact = false;
};

/// Smooth objective with exact oracles. Oracles are pure; whoever consumes
/// them on behalf of an algorithm charges counters(). Reporting code (exact
/// loss traces, finite-difference checks) calls the oracles without charging.
class Objective {
 public:
  virtual ~Objective() = default;

  Objective(const Objective&) = delete;
  Objective& operator=(const Objective&) = delete;

  virtual Index dimension() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual HessianOperator hessian(const Vector& x) const = 0;

  /// A valid lower bound f_low; -infinity when none is known.
  virtual double lower_bound() const { return -std::numeric_limits<double>::infinity(); }

  /// Number of per-sample terms one exact gradient costs (1 for plain objectives).
  virtual std::uint64_t population() const { return 1; }

  virtual std::string name() const = 0;

  Counters& counters() const noexcept { return counters_; }

 protected:
  explicit Objective(std::uint64_t population = 1) : counters_(population) {}

 private:
  mutable Counters counters_;
};

/// f(x) = (1/N) sum_i f_i(x). Full-batch oracles are the batch oracles over
/// all indices in ascending order, so a full sorted batch reproduces them
/// bitwise.
class FiniteSumObjective : public Objective {
 public:
  Index num_samples() const noexcept { return num_samples_; }
  std::uint64_t population() const override { return static_cast<std::uint64_t>(num_samples_); }

  virtual double sample_value(const Vector& x, Index i) const = 0;
  virtual Vector sample_gradient(const Vector& x, Index i) const = 0;
  virtual HessianOperator sample_hessian(const Vector& x, Index i) const = 0;

  /// Mean over the batch (indices may repeat). Reduction is sequential in
  /// batch order.
  virtual double batch_value(const Vector& x, std::span<const Index> batch) const = 0;
  virtual Vector batch_gradient(const Vector& x, std::span<const Index> batch) const = 0;
  virtual HessianOperator batch_hessian(const Vector& x, std::span<const Index> batch) const = 0;

  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  HessianOperator hessian(const Vector& x) const override;

  std::span<const Index> all_indices() const noexcept { return all_; }

 protected:
  explicit FiniteSumObjective(Index num_samples);

 private:
  Index num_samples_;
  std::vector<Index> all_;
};

}  // namespace stoffar
