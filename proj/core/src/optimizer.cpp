#include "stoffar/optimizer.hpp"

#include <chrono>
#include <cmath>

#include "stoffar/model.hpp"

namespace stoffar {

GradientEstimate ExactEstimator::gradient(const Vector& x, const EstimateRequest&, Rng&) {
  GradientEstimate out;
  out.gradient = problem_.gradient(x);
  out.batch = static_cast<Index>(problem_.population());
  out.exact = true;
  problem_.counters().add_gradients(problem_.population());
  return out;
}

HessianEstimate ExactEstimator::hessian(const Vector& x, const EstimateRequest&, Rng&) {
  return {problem_.hessian(x).with_counters(&problem_.counters()),
          static_cast<Index>(problem_.population())};
}

void StoffarConfig::validate() const {
  if (degree != 1 && degree != 2) throw std::invalid_argument("StoffarConfig: p must be 1 or 2");
  if (!(sigma0 > 0.0)) throw std::invalid_argument("StoffarConfig: sigma0 must be positive");
  if (!(theta1 > 1.0)) throw std::invalid_argument("StoffarConfig: theta1 must exceed 1");
  if (!(epsilon1 > 0.0 && epsilon1 <= 1.0)) {
    throw std::invalid_argument("StoffarConfig: epsilon1 must lie in (0, 1]");
  }
  if (memory < 1) throw std::invalid_argument("StoffarConfig: memory must be >= 1");
  if (max_iters < 0) throw std::invalid_argument("StoffarConfig: max_iters must be >= 0");
  if (trace_loss_every < 0) throw std::invalid_argument("StoffarConfig: trace_loss_every must be >= 0");
  SolverConfig s = solver;
  s.theta1 = theta1;
  s.validate();
}

RunRecord run(const Objective& problem, DerivativeEstimator& estimator, const StoffarConfig& cfg,
              std::uint64_t seed) {
  using clock = std::chrono::steady_clock;
  cfg.validate();
  const Index n = problem.dimension();
  if (cfg.x0 && cfg.x0->size() != n) throw DimensionError("run: x0 dimension mismatch");

  SolverConfig solver = cfg.solver;
  solver.theta1 = cfg.theta1;
  if (cfg.degree == 1) solver.method = SolverMethod::closed_form_p1;

  OptimizerState state{cfg.x0 ? *cfg.x0 : Vector::Zero(n), cfg.sigma0, 0,
                       StepHistory(cfg.memory, cfg.degree)};
  Rng rng = make_stream(seed, RngStream::estimator);
  const double population = static_cast<double>(problem.population());

  RunRecord record;
  double tau = 0.0;
  for (;; ++state.k) {
    const auto start = clock::now();
    const EstimateRequest req{state.k, cfg.degree, &state.history};

    IterationRow row;
    row.k = state.k;
    row.sigma = state.sigma;
    row.xi = state.history.xi();

    const GradientEstimate ge = estimator.gradient(state.x, req, rng);
    if (ge.gradient.size() != n) throw DimensionError("run: estimator gradient dimension mismatch");
    row.grad_norm_est = ge.gradient.norm();
    row.batch_gradient = ge.batch;
    if (cfg.trace_exact_gradient) row.grad_norm_exact = problem.gradient(state.x).norm();
    if (cfg.trace_loss_every > 0 && state.k % cfg.trace_loss_every == 0) {
      row.loss = problem.value(state.x);
    }

    auto finish_row = [&](IterationRow& r) {
      tau += static_cast<double>(r.batch_gradient + r.batch_hessian) * static_cast<double>(r.ege);
      r.tau = tau;
      r.samples_drawn = problem.counters().snapshot().samples_drawn;
      r.epoch = static_cast<double>(r.samples_drawn) / population;
      r.wall_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
      record.rows.push_back(r);
    };

    const bool converged = row.grad_norm_est <= cfg.epsilon1;
    if (converged || state.k >= cfg.max_iters) {
      if (cfg.trace_loss_every > 0 && !row.loss) row.loss = problem.value(state.x);
      row.ege = 1;
      finish_row(row);
      record.status = converged ? RunStatus::converged : RunStatus::max_iters;
      break;
    }

    StepResult step;
    std::optional<RegularizedModel> model;
    try {
      if (cfg.degree == 1) {
        model.emplace(ge.gradient, state.sigma);
        step = solve_p1(ge.gradient, state.sigma, cfg.theta1);
      } else {
        HessianEstimate he = estimator.hessian(state.x, req, rng);
        row.batch_hessian = he.batch;
        model.emplace(ge.gradient, std::move(he.hessian), state.sigma);
        step = solve_step(*model, solver);
      }
    } catch (const SubproblemError& e) {
      record.x_final = state.x;
      throw RunError(std::string("run: iteration ") + std::to_string(state.k) + ": " + e.what(),
                     std::move(record));
    }
    if (!step.report.passed()) {
      record.x_final = state.x;
      throw RunError("run: iteration " + std::to_string(state.k) + ": step conditions failed",
                     std::move(record));
    }

    if (cfg.on_step) cfg.on_step(StepObservation{state.k, state.x, *model, step});

    row.step_norm = step.s.norm();
    row.model_delta = step.report.model_delta;
    row.ege = step.hvp_count + 1;
    finish_row(row);

    state.x += step.s;
    state.sigma = update_sigma(state.sigma, row.step_norm, cfg.degree);
    state.history.push(row.step_norm);
  }
  record.x_final = std::move(state.x);
  return record;
}

}  // namespace stoffar
