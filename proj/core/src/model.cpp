#include "stoffar/model.hpp"

#include <cmath>
#include <stdexcept>

namespace stoffar {
namespace {

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

struct DeltaTerms {
  double linear;
  double quadratic;
  double regularizer;
};

DeltaTerms delta_terms(const RegularizedModel& model, const Vector& s, const Vector* hs) {
  if (s.size() != model.dimension()) throw DimensionError("model: step dimension mismatch");
  const int p = model.degree();
  const double len = s.norm();
  DeltaTerms t{};
  t.linear = model.gradient().dot(s);
  t.quadratic = hs != nullptr ? 0.5 * s.dot(*hs) : 0.0;
  t.regularizer = model.sigma() / factorial(p + 1) * std::pow(len, p + 1);
  return t;
}

}  // namespace

RegularizedModel::RegularizedModel(Vector g, double sigma) : g_(std::move(g)), sigma_(sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("RegularizedModel: sigma must be positive");
}

RegularizedModel::RegularizedModel(Vector g, HessianOperator h, double sigma)
    : g_(std::move(g)), h_(std::move(h)), sigma_(sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("RegularizedModel: sigma must be positive");
  if (h_->dimension() != g_.size()) throw DimensionError("RegularizedModel: Hessian dimension mismatch");
}

double model_delta(const RegularizedModel& model, const Vector& s) {
  Vector hs;
  if (model.hessian() != nullptr) hs = model.hessian()->uncounted().apply(s);
  const DeltaTerms t = delta_terms(model, s, model.hessian() ? &hs : nullptr);
  return t.linear + t.quadratic + t.regularizer;
}

Vector taylor_gradient(const RegularizedModel& model, const Vector& s) {
  if (s.size() != model.dimension()) throw DimensionError("taylor_gradient: step dimension mismatch");
  if (model.hessian() == nullptr) return model.gradient();
  return model.gradient() + model.hessian()->uncounted().apply(s);
}

StepCheckReport check_step(const RegularizedModel& model, const Vector& s, double theta1) {
  if (!(theta1 > 1.0)) throw std::invalid_argument("check_step: theta1 must exceed 1");
  const int p = model.degree();
  Vector hs;
  if (model.hessian() != nullptr) hs = model.hessian()->uncounted().apply(s);
  const DeltaTerms t = delta_terms(model, s, model.hessian() ? &hs : nullptr);
  const Vector tg = model.hessian() != nullptr ? Vector(model.gradient() + hs) : model.gradient();

  StepCheckReport r;
  r.model_delta = t.linear + t.quadratic + t.regularizer;
  r.taylor_grad_norm = tg.norm();
  r.threshold = theta1 * model.sigma() * std::pow(s.norm(), p) / factorial(p);
  const double scale = std::abs(t.linear) + std::abs(t.quadratic) + std::abs(t.regularizer);
  r.decrease_ok = r.model_delta <= kStepCheckTolerance * scale;
  r.grad_ok = r.taylor_grad_norm <= r.threshold * (1.0 + kStepCheckTolerance);
  return r;
}

}  // namespace stoffar
