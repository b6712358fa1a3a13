#pragma once

#include <vector>

#include "stoffar/linalg.hpp"

namespace stoffar {

/// The last m step lengths ||s_{k-1}||, ..., ||s_{k-m}||. Before any step is
/// taken every slot holds 1 (the negative-index convention).
class StepHistory {
 public:
  StepHistory(Index memory, int degree);

  void push(double step_norm);

  /// xi_k = sum_j ||s_{k-j}||^(p+1).
  double xi() const;

  /// sum_j ||s_{k-j}||^q.
  double power_sum(double q) const;

  /// ||s_{k-1}|| (1 before the first step).
  double last() const;

  /// Stored step lengths, most recent first.
  std::vector<double> norms() const;

  Index memory() const noexcept { return static_cast<Index>(ring_.size()); }
  int degree() const noexcept { return degree_; }

 private:
  std::vector<double> ring_;
  std::size_t head_ = 0;  // slot of the most recent entry
  int degree_;
};

/// Regularization weights attached to the virtual iterations -m..-1:
/// sigma_j = sigma0 * 2^j.
double negative_index_sigma(int j, double sigma0, Index memory);

/// sigma (1 + ||s||^(p+1)).
double update_sigma(double sigma, double step_norm, int degree);

}  // namespace stoffar
