#include "stoffar/step_history.hpp"

#include <cmath>
#include <stdexcept>

namespace stoffar {

StepHistory::StepHistory(Index memory, int degree)
    : ring_(static_cast<std::size_t>(memory > 0 ? memory : 0), 1.0), degree_(degree) {
  if (memory < 1) throw std::invalid_argument("StepHistory: memory must be >= 1");
  if (degree < 1) throw std::invalid_argument("StepHistory: degree must be >= 1");
}

void StepHistory::push(double step_norm) {
  if (!(step_norm >= 0.0)) throw std::invalid_argument("StepHistory: step norm must be >= 0");
  head_ = (head_ + ring_.size() - 1) % ring_.size();
  ring_[head_] = step_norm;
}

double StepHistory::xi() const { return power_sum(degree_ + 1); }

double StepHistory::power_sum(double q) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < ring_.size(); ++i) sum += std::pow(ring_[(head_ + i) % ring_.size()], q);
  return sum;
}

double StepHistory::last() const { return ring_[head_]; }

std::vector<double> StepHistory::norms() const {
  std::vector<double> out(ring_.size());
  for (std::size_t i = 0; i < ring_.size(); ++i) out[i] = ring_[(head_ + i) % ring_.size()];
  return out;
}

double negative_index_sigma(int j, double sigma0, Index memory) {
  if (j > -1 || j < -memory) throw std::out_of_range("negative_index_sigma: j must lie in [-m, -1]");
  return std::ldexp(sigma0, j);
}

double update_sigma(double sigma, double step_norm, int degree) {
  if (!(sigma > 0.0)) throw std::invalid_argument("update_sigma: sigma must be positive");
  if (!(step_norm >= 0.0)) throw std::invalid_argument("update_sigma: step norm must be >= 0");
  return sigma + sigma * std::pow(step_norm, degree + 1);
}

}  // namespace stoffar
