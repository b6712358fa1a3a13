#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "stoffar/counters.hpp"
#include "stoffar/linalg.hpp"

namespace stoffar {

/// Symmetric linear operator v -> H v. The action is the only required
/// ingredient; a dense builder may be supplied when the caller can form the
/// matrix cheaper than n products. Every apply() is charged to the attached
/// counters (if any).
class HessianOperator {
 public:
  using Action = std::function<Vector(const Vector&)>;
  using DenseBuilder = std::function<Matrix()>;

  HessianOperator(Index n, Action action, DenseBuilder dense = {}, Counters* counters = nullptr);

  static HessianOperator from_dense(Matrix h, Counters* counters = nullptr);
  static HessianOperator zero(Index n);

  Index dimension() const noexcept { return n_; }

  /// Counted product.
  Vector apply(const Vector& v) const;
  Vector operator()(const Vector& v) const { return apply(v); }

  /// Dense materialization. Uses the builder when present, otherwise n
  /// uncounted products against the unit vectors.
  Matrix dense() const;
  bool has_dense_builder() const noexcept { return static_cast<bool>(dense_); }

  /// Charges n HVP-equivalents without computing anything (used when a dense
  /// factorization stands in for products).
  void charge(std::uint64_t n) const;

  /// Same operator, detached from any counters.
  HessianOperator uncounted() const;
  HessianOperator with_counters(Counters* counters) const;

  /// this + other, both applied on each product.
  HessianOperator plus(const HessianOperator& other) const;

 private:
  Index n_;
  std::shared_ptr<const Action> action_;
  DenseBuilder dense_;
  Counters* counters_;
};

/// max over random unit pairs of |<u,Hv> - <v,Hu>| / (1 + |<u,Hv>|).
double probe_symmetry(const HessianOperator& h, Index trials, std::uint64_t seed);

/// max over random (u, v, a, b) of ||H(au+bv) - aHu - bHv|| / (1 + ||aHu|| + ||bHv||).
double probe_linearity(const HessianOperator& h, Index trials, std::uint64_t seed);

}  // namespace stoffar
