#include "stoffar/eda.hpp"

#include <cmath>
#include <stdexcept>

namespace stoffar {
namespace {

double scale_factor(const EdaSettings& eda, Rng& rng) {
  switch (eda.mode) {
    case EdaMode::boundary: return 1.0;
    case EdaMode::uniform_within: return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    case EdaMode::adversarial_violating: return eda.violation_factor;
  }
  return 1.0;
}

}  // namespace

std::string to_string(EdaMode mode) {
  switch (mode) {
    case EdaMode::boundary: return "boundary";
    case EdaMode::uniform_within: return "uniform_within";
    case EdaMode::adversarial_violating: return "adversarial_violating";
  }
  return "unknown";
}

EdaMode parse_eda_mode(const std::string& name) {
  for (auto m : {EdaMode::boundary, EdaMode::uniform_within, EdaMode::adversarial_violating}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown EDA mode '" + name + "'");
}

double eda_budget(const StepHistory& history, double kappa_d, int order) {
  if (order < 1 || order > history.degree()) throw std::invalid_argument("eda_budget: order out of range");
  return kappa_d * history.power_sum(history.degree() + 1 - order);
}

Vector eda_perturb_gradient(const Vector& g, const StepHistory& history, const EdaSettings& eda, Rng& rng) {
  if (eda.kappa_d == 0.0) return g;
  const double radius = eda_budget(history, eda.kappa_d, 1) * scale_factor(eda, rng);
  return g + radius * random_unit_vector(g.size(), rng);
}

HessianOperator eda_perturb_hessian(const HessianOperator& h, const StepHistory& history,
                                    const EdaSettings& eda, Rng& rng) {
  if (eda.kappa_d == 0.0) return h;
  const Index n = h.dimension();
  const double target = eda_budget(history, eda.kappa_d, 2) * scale_factor(eda, rng);
  const Vector u = random_unit_vector(n, rng);
  const Vector v = random_unit_vector(n, rng);
  // The eigenvalues of u v' + v u' are u'v +- 1 (and zeros).
  const double c = target / (1.0 + std::abs(u.dot(v)));
  auto action = [u, v, c](const Vector& w) -> Vector { return c * (u * v.dot(w) + v * u.dot(w)); };
  auto dense = [u, v, c]() -> Matrix { return c * (u * v.transpose() + v * u.transpose()); };
  return h.plus(HessianOperator(n, std::move(action), std::move(dense)));
}

DerivativeEstimate eda_perturb(const DerivativeEstimate& exact, const StepHistory& history,
                               const EdaSettings& eda, Rng& rng) {
  if (eda.kappa_d == 0.0) return exact;
  DerivativeEstimate out = exact;
  out.gradient = eda_perturb_gradient(exact.gradient, history, eda, rng);
  if (exact.hessian && history.degree() >= 2) out.hessian = eda_perturb_hessian(*exact.hessian, history, eda, rng);
  out.exact = false;
  return out;
}

GradientEstimate EdaEstimator::gradient(const Vector& x, const EstimateRequest& req, Rng& rng) {
  if (req.history == nullptr) throw std::invalid_argument("EdaEstimator: step history required");
  problem_.counters().add_gradients(problem_.population());
  GradientEstimate out;
  out.gradient = eda_perturb_gradient(problem_.gradient(x), *req.history, eda_, rng);
  out.batch = static_cast<Index>(problem_.population());
  out.exact = eda_.kappa_d == 0.0;
  return out;
}

HessianEstimate EdaEstimator::hessian(const Vector& x, const EstimateRequest& req, Rng& rng) {
  if (req.history == nullptr) throw std::invalid_argument("EdaEstimator: step history required");
  HessianOperator h = eda_perturb_hessian(problem_.hessian(x), *req.history, eda_, rng);
  return {h.with_counters(&problem_.counters()), static_cast<Index>(problem_.population())};
}

}  // namespace stoffar
