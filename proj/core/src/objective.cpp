#include "stoffar/objective.hpp"

#include <numeric>

namespace stoffar {

FiniteSumObjective::FiniteSumObjective(Index num_samples)
    : Objective(static_cast<std::uint64_t>(num_samples)), num_samples_(num_samples),
      all_(static_cast<std::size_t>(num_samples)) {
  std::iota(all_.begin(), all_.end(), Index{0});
}

double FiniteSumObjective::value(const Vector& x) const { return batch_value(x, all_); }

Vector FiniteSumObjective::gradient(const Vector& x) const { return batch_gradient(x, all_); }

HessianOperator FiniteSumObjective::hessian(const Vector& x) const { return batch_hessian(x, all_); }

}  // namespace stoffar
