#pragma once

// Independent reference computations shared by the unit and acceptance
// tests. Nothing here calls into the library's solvers.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "stoffar/linalg.hpp"

namespace oracle {

using stoffar::Matrix;
using stoffar::Vector;

/// g's + s'Hs/2 + sigma/6 ||s||^3.
double cubic_model(const Vector& g, const Matrix& h, double sigma, const Vector& s);

struct Minimum {
  Vector s;
  double value = 0.0;
};

/// Global minimizer of the 2-D cubic model: dense grid over a box that must
/// contain it, then compass search from the best few grid points.
Minimum brute_force_cubic_2d(const Vector& g, const Matrix& h, double sigma);

/// Spectral norm of a symmetric operator by power iteration on A^2.
double power_iteration_norm(const std::function<Vector(const Vector&)>& apply, stoffar::Index n,
                            double tol = 1e-12, int max_iters = 20000);

/// Central differences of f at x.
Vector fd_gradient(const std::function<double(const Vector&)>& f, const Vector& x, double h);

/// Central differences of a gradient along v.
Vector fd_hvp(const std::function<Vector(const Vector&)>& grad, const Vector& x, const Vector& v, double h);

/// Bisection for the root of f on [lo, hi] (f(lo), f(hi) of opposite sign).
double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200);

/// Minimal CSV reader: header row, comma separated, no quoting.
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::size_t column(const std::string& name) const;
};
Csv parse_csv(const std::string& text);

}  // namespace oracle
