#pragma once

#include <stdexcept>

namespace stoffar {

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class LambertBranch { principal = 0, lower = -1 };

/// w with w e^w = x. Principal branch: x >= -1/e, w >= -1. Lower branch:
/// -1/e <= x < 0, w <= -1.
double lambert_w(LambertBranch branch, double x);
inline double lambert_w0(double x) { return lambert_w(LambertBranch::principal, x); }
inline double lambert_wm1(double x) { return lambert_w(LambertBranch::lower, x); }

/// -W_{-1}(-e^{-y}) for y >= 1, i.e. the root v >= 1 of v - ln v = y.
/// Usable when e^{-y} underflows.
double lambert_wm1_neg_exp(double y);

/// Upper bound 1 + sqrt(2x) + x on |W_{-1}(-e^{-x-1})|, x > 0.
double lambert_wm1_bound(double x);

}  // namespace stoffar
