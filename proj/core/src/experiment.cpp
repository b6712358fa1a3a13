#include "stoffar/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <thread>

namespace stoffar {

MethodSpec offar2_method(Index memory) {
  MethodSpec m;
  m.label = "offar2-" + std::to_string(memory);
  m.degree = 2;
  m.memory = memory;
  m.sigma0 = 0.01;
  m.theta1 = 2.0;
  m.max_iters = 1000;
  m.schedule.kind = ScheduleKind::practical;
  m.solver.method = SolverMethod::matrix_free;
  return m;
}

MethodSpec wngrad_method() {
  MethodSpec m;
  m.label = "wngrad";
  m.degree = 1;
  m.memory = 1;
  m.sigma0 = 0.1;
  m.theta1 = 2.0;
  m.max_iters = 10000;
  m.schedule.kind = ScheduleKind::wngrad;
  m.schedule.floor_g_frac = 0.05;
  m.solver.method = SolverMethod::closed_form_p1;
  return m;
}

void ExperimentConfig::validate() const {
  if (runs < 1) throw std::invalid_argument("experiment: runs must be >= 1");
  if (methods.empty()) throw std::invalid_argument("experiment: no methods");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("experiment: epsilon must lie in (0, 1]");
  if (threads < 0) throw std::invalid_argument("experiment: threads must be >= 0");
  for (const auto& m : methods) {
    if (m.label.empty()) throw std::invalid_argument("experiment: method without a label");
    m.schedule.validate();
    if (std::count_if(methods.begin(), methods.end(), [&](const MethodSpec& o) { return o.label == m.label; }) > 1) {
      throw std::invalid_argument("experiment: duplicate method '" + m.label + "'");
    }
  }
}

double tau_cost(const RunRecord& record) {
  double tau = 0.0;
  for (const auto& r : record.rows) {
    tau += static_cast<double>(r.batch_gradient + r.batch_hessian) * static_cast<double>(r.ege);
  }
  return tau;
}

namespace {

RunOutcome execute(const ExperimentConfig& cfg, const MethodSpec& method, Index run,
                   const std::shared_ptr<const SparseDataset>& data) {
  RunOutcome out;
  out.method = method.label;
  out.run = run;
  out.seed = cfg.base_seed + static_cast<std::uint64_t>(run);

  // Each run owns its objective so the evaluation counters are private.
  const DatasetObjective problem(data, cfg.problem.objective, cfg.problem.alpha);
  SampledEstimator estimator(problem, method.schedule);
  StoffarConfig sc;
  sc.degree = method.degree;
  sc.sigma0 = method.sigma0;
  sc.theta1 = method.theta1;
  sc.epsilon1 = cfg.epsilon;
  sc.memory = method.memory;
  sc.max_iters = method.max_iters;
  sc.solver = method.solver;
  sc.trace_exact_gradient = cfg.trace_exact_gradient;
  sc.trace_loss_every = cfg.trace_loss_every;
  try {
    out.record = stoffar::run(problem, estimator, sc, out.seed);
    out.solved = out.record.status == RunStatus::converged;
  } catch (const RunError& e) {
    out.record = e.partial();
    out.solved = false;
    out.error = e.what();
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, std::shared_ptr<const SparseDataset> data) {
  cfg.validate();
  if (!data) throw std::invalid_argument("run_experiment: no dataset");
  ExperimentResult result;
  result.problem = cfg.problem.name.empty() ? data->name() : cfg.problem.name;
  result.population = data->num_samples();

  const std::size_t jobs = cfg.methods.size() * static_cast<std::size_t>(cfg.runs);
  result.runs.resize(jobs);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t j = next.fetch_add(1); j < jobs; j = next.fetch_add(1)) {
      const auto& method = cfg.methods[j / static_cast<std::size_t>(cfg.runs)];
      const auto run = static_cast<Index>(j % static_cast<std::size_t>(cfg.runs));
      result.runs[j] = execute(cfg, method, run, data);
    }
  };
  std::size_t threads = cfg.threads > 0 ? static_cast<std::size_t>(cfg.threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, jobs);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<std::string> order;
  for (const auto& m : cfg.methods) order.push_back(m.label);
  summarize(result, order);
  return result;
}

void summarize(ExperimentResult& result, const std::vector<std::string>& method_order) {
  std::optional<double> f_star;
  for (const auto& o : result.runs) {
    for (const auto& r : o.record.rows) {
      if (r.loss) f_star = f_star ? std::min(*f_star, *r.loss) : *r.loss;
    }
  }
  result.f_star = f_star;
  result.summaries.clear();
  for (const auto& label : method_order) {
    MethodSummary s;
    s.method = label;
    s.tau_min = std::numeric_limits<double>::infinity();
    s.tau_max = 0.0;
    std::vector<const RunOutcome*> mine;
    for (const auto& o : result.runs) {
      if (o.method == label) mine.push_back(&o);
    }
    s.runs = static_cast<Index>(mine.size());
    Index longest = 0;
    for (const auto* o : mine) {
      const double tau = tau_cost(o->record);
      s.solved += o->solved ? 1 : 0;
      s.tau_mean += tau;
      s.tau_min = std::min(s.tau_min, tau);
      s.tau_max = std::max(s.tau_max, tau);
      s.iterations_mean += static_cast<double>(o->record.iterations());
      s.epochs_mean += o->record.rows.empty() ? 0.0 : o->record.rows.back().epoch;
      longest = std::max(longest, o->record.iterations());
    }
    if (s.runs > 0) {
      const double n = static_cast<double>(s.runs);
      s.tau_mean /= n;
      s.iterations_mean /= n;
      s.epochs_mean /= n;
    } else {
      s.tau_min = 0.0;
    }
    // Finished runs hold their last row, so every mean curve is taken over
    // all runs and tau stays nondecreasing.
    std::vector<std::optional<double>> last_loss(mine.size());
    for (Index k = 0; k < longest; ++k) {
      AggregateRow a;
      a.k = k;
      double loss_sum = 0.0;
      Index loss_count = 0;
      for (std::size_t i = 0; i < mine.size(); ++i) {
        const auto& rows = mine[i]->record.rows;
        if (rows.empty()) continue;
        const bool live = k < static_cast<Index>(rows.size());
        const auto& r = live ? rows[static_cast<std::size_t>(k)] : rows.back();
        a.active += live ? 1 : 0;
        a.grad_norm_est += r.grad_norm_est;
        a.tau += r.tau;
        a.batch_gradient += live ? static_cast<double>(r.batch_gradient) : 0.0;
        a.batch_hessian += live ? static_cast<double>(r.batch_hessian) : 0.0;
        a.epoch += r.epoch;
        if (live && r.loss) last_loss[i] = r.loss;
        if (last_loss[i]) {
          loss_sum += *last_loss[i];
          ++loss_count;
        }
      }
      const double n = static_cast<double>(mine.size());
      a.grad_norm_est /= n;
      a.tau /= n;
      a.epoch /= n;
      if (a.active > 0) {
        a.batch_gradient /= static_cast<double>(a.active);
        a.batch_hessian /= static_cast<double>(a.active);
      }
      if (loss_count > 0) {
        a.loss = loss_sum / static_cast<double>(loss_count);
        if (f_star) a.loss_gap = *a.loss - *f_star;
      }
      s.curve.push_back(a);
    }
    result.summaries.push_back(std::move(s));
  }
}

}  // namespace stoffar
