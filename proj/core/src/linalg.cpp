#include "stoffar/linalg.hpp"

#include <cmath>
#include <string>

namespace stoffar {

Rng make_stream(std::uint64_t seed, RngStream stream) {
  const auto id = static_cast<std::uint64_t>(stream);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32)};
  return Rng(seq);
}

double dot(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) {
    throw DimensionError("dot: dimension mismatch (" + std::to_string(u.size()) + " vs " +
                         std::to_string(v.size()) + ")");
  }
  return u.dot(v);
}

double norm(const Vector& u) { return std::sqrt(u.dot(u)); }

Vector random_unit_vector(Index n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(n);
  double len = 0.0;
  do {
    for (Index i = 0; i < n; ++i) v(i) = gauss(rng);
    len = norm(v);
  } while (len == 0.0);
  return v / len;
}

bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace stoffar
