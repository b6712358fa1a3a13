#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stoffar/dataset.hpp"
#include "stoffar/objectives.hpp"
#include "stoffar/optimizer.hpp"
#include "stoffar/profile.hpp"
#include "stoffar/run_record.hpp"
#include "stoffar/sampling.hpp"

namespace stoffar {

/// One optimizer variant: "offar2-<m>" (p = 2, memory m) or "wngrad"
/// (p = 1, m = 1), each with its own sigma0, iteration cap, and schedule.
struct MethodSpec {
  std::string label;
  int degree = 2;
  Index memory = 1;
  double sigma0 = 0.01;
  double theta1 = 2.0;
  Index max_iters = 1000;
  BatchSchedule schedule;
  SolverConfig solver;
};

/// Defaults of the two method families.
MethodSpec offar2_method(Index memory);
MethodSpec wngrad_method();

struct ProblemSpec {
  std::string name;
  std::string dataset = "synth-a9a";
  Index subset = 0;  // 0 keeps every sample
  std::uint64_t data_seed = 0;
  LossKind objective = LossKind::nc_logistic;
  double alpha = 0.001;
};

struct ExperimentConfig {
  ProblemSpec problem;
  std::vector<MethodSpec> methods;
  double epsilon = 5e-4;
  Index runs = 20;
  std::uint64_t base_seed = 1;
  Index threads = 0;  // 0 = hardware concurrency
  Index trace_loss_every = 10;
  bool trace_exact_gradient = false;

  void validate() const;
};

struct RunOutcome {
  std::string method;
  Index run = 0;
  std::uint64_t seed = 0;
  RunRecord record;
  bool solved = false;
  std::string error;  // solver failure, empty otherwise
};

/// Per-iteration means over all runs; a finished run contributes its last
/// row. Batch sizes are averaged over the runs still active.
struct AggregateRow {
  Index k = 0;
  Index active = 0;
  double grad_norm_est = 0.0;
  double tau = 0.0;
  double batch_gradient = 0.0;
  double batch_hessian = 0.0;
  double epoch = 0.0;
  std::optional<double> loss;      // mean of each run's latest traced loss
  std::optional<double> loss_gap;  // loss - f_star
};

struct MethodSummary {
  std::string method;
  Index runs = 0;
  Index solved = 0;
  double tau_mean = 0.0;  // over all runs
  double tau_min = 0.0;
  double tau_max = 0.0;
  double iterations_mean = 0.0;
  double epochs_mean = 0.0;
  std::vector<AggregateRow> curve;

  /// Profile cost: mean tau when every run converged, unsolved otherwise.
  double cost() const noexcept { return solved == runs ? tau_mean : kUnsolved; }
};

struct ExperimentResult {
  std::string problem;
  Index population = 0;
  std::vector<RunOutcome> runs;  // ordered by (method, run)
  std::vector<MethodSummary> summaries;
  std::optional<double> f_star;  // smallest traced exact loss
};

/// Sum of (b_g + b_H) ege over the rows of a record.
double tau_cost(const RunRecord& record);

/// Runs cfg.runs seeds of every method on the dataset, seeds base_seed + run,
/// on a worker pool. Results do not depend on the number of workers.
ExperimentResult run_experiment(const ExperimentConfig& cfg, std::shared_ptr<const SparseDataset> data);

/// Summaries and curves from a set of outcomes (used by run_experiment).
void summarize(ExperimentResult& result, const std::vector<std::string>& method_order);

}  // namespace stoffar
