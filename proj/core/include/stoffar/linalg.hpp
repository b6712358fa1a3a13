#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace stoffar {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Random engine used everywhere a run draws randomness. Each run owns
/// independent streams (see make_stream) so concurrent runs never share state.
using Rng = std::mt19937_64;

/// Stream identifiers for make_stream. Estimator and solver draws never overlap.
enum class RngStream : std::uint64_t {
  estimator = 1,
  solver = 2,
  init = 3,
  probe = 4,
};

/// Deterministic named stream derived from a run seed.
Rng make_stream(std::uint64_t seed, RngStream stream);

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double dot(const Vector& u, const Vector& v);
double norm(const Vector& u);

/// Uniformly distributed unit vector.
Vector random_unit_vector(Index n, Rng& rng);

bool all_finite(const Vector& v);

}  // namespace stoffar
