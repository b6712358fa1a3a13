#include "stoffar/grad_check.hpp"

#include <algorithm>
#include <random>

namespace stoffar {
namespace {

double rel(const Vector& approx, const Vector& exact) {
  const double scale = std::max(exact.norm(), 1e-12);
  return (approx - exact).norm() / scale;
}

}  // namespace

DerivativeCheck check_derivatives(const Objective& f, Index points, double h, std::uint64_t seed, double scale) {
  Rng rng = make_stream(seed, RngStream::probe);
  std::normal_distribution<double> normal(0.0, scale);
  const Index n = f.dimension();
  DerivativeCheck out;
  out.points = points;
  for (Index p = 0; p < points; ++p) {
    Vector x(n);
    for (Index i = 0; i < n; ++i) x[i] = normal(rng);
    const Vector g = f.gradient(x);
    Vector fd(n);
    Vector xp = x;
    for (Index i = 0; i < n; ++i) {
      xp[i] = x[i] + h;
      const double up = f.value(xp);
      xp[i] = x[i] - h;
      const double down = f.value(xp);
      xp[i] = x[i];
      fd[i] = (up - down) / (2.0 * h);
    }
    out.gradient_rel = std::max(out.gradient_rel, rel(fd, g));

    const Vector v = random_unit_vector(n, rng);
    const Vector hv = f.hessian(x).apply(v);
    const Vector hv_fd = (f.gradient(x + h * v) - f.gradient(x - h * v)) / (2.0 * h);
    out.hvp_rel = std::max(out.hvp_rel, rel(hv_fd, hv));
  }
  return out;
}

}  // namespace stoffar
