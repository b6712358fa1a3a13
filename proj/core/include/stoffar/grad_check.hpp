#pragma once

#include <cstdint>

#include "stoffar/objective.hpp"

namespace stoffar {

struct DerivativeCheck {
  Index points = 0;
  double gradient_rel = 0.0;  // worst ||fd - g|| / ||g||
  double hvp_rel = 0.0;       // worst ||fd - Hv|| / ||Hv||
};

/// Central differences with step h at random points x ~ N(0, scale^2 I),
/// each paired with a random unit direction for the Hessian-vector product.
DerivativeCheck check_derivatives(const Objective& f, Index points, double h, std::uint64_t seed,
                                  double scale = 1.0);

}  // namespace stoffar
