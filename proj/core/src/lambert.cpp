#include "stoffar/lambert.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace stoffar {
namespace {

constexpr double kInvE = 1.0 / std::numbers::e;
constexpr int kMaxIter = 50;

double halley(double w, double x) {
  for (int it = 0; it < kMaxIter; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (f == 0.0 || wp1 == 0.0) break;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    const double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(w))) break;
  }
  return w;
}

}  // namespace

double lambert_w(LambertBranch branch, double x) {
  if (std::isnan(x)) throw DomainError("lambert_w: NaN argument");
  // Arguments a hair below -1/e are treated as the branch point.
  if (x < -kInvE) {
    if (x < -kInvE * (1.0 + 4 * std::numeric_limits<double>::epsilon())) {
      throw DomainError("lambert_w: argument below -1/e");
    }
    return -1.0;
  }
  const double p2 = 2.0 * (std::numbers::e * x + 1.0);  // >= 0
  const double p = std::sqrt(std::max(0.0, p2));
  if (p == 0.0) return -1.0;

  if (branch == LambertBranch::principal) {
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return x;
    double w;
    if (p < 0.5) {
      w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    } else if (x < 3.0) {
      w = std::log1p(x) * (1.0 - std::log1p(std::log1p(x)) / (2.0 + std::log1p(x)));
    } else {
      const double l1 = std::log(x);
      const double l2 = std::log(l1);
      w = l1 - l2 + l2 / l1;
    }
    return halley(w, x);
  }

  if (!(x < 0.0)) throw DomainError("lambert_w: lower branch needs -1/e <= x < 0");
  double w;
  if (p < 0.5) {
    w = -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p;
  } else {
    const double l1 = std::log(-x);
    const double l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  }
  return halley(w, x);
}

double lambert_wm1_neg_exp(double y) {
  if (std::isnan(y) || y < 1.0) throw DomainError("lambert_wm1_neg_exp: requires y >= 1");
  const double d = y - 1.0;
  if (d < 1e-12) return 1.0 + std::sqrt(2.0 * d);
  // h(v) = v - ln v - y is convex and increasing on v > 1, and the start
  // point is an upper bound of the root, so Newton decreases monotonically.
  double v = y + std::sqrt(2.0 * d);
  for (int it = 0; it < 200; ++it) {
    const double h = v - std::log(v) - y;
    const double step = h / (1.0 - 1.0 / v);
    const double next = v - step;
    if (!(next < v) || std::abs(step) <= 1e-16 * v) {
      v = std::min(v, next > 1.0 ? next : v);
      break;
    }
    v = next;
  }
  return v;
}

double lambert_wm1_bound(double x) {
  if (!(x > 0.0)) throw DomainError("lambert_wm1_bound: requires x > 0");
  return 1.0 + std::sqrt(2.0 * x) + x;
}

}  // namespace stoffar
