// stoffar command-line front end.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stoffar/config.hpp"
#include "stoffar/dataset.hpp"
#include "stoffar/emit.hpp"
#include "stoffar/experiment.hpp"
#include "stoffar/grad_check.hpp"
#include "stoffar/lambert.hpp"
#include "stoffar/objectives.hpp"
#include "stoffar/profile.hpp"
#include "stoffar/registry.hpp"
#include "stoffar/run_record.hpp"
#include "stoffar/theory.hpp"

namespace {

using namespace stoffar;

constexpr int kOk = 0;
constexpr int kNotConverged = 1;
constexpr int kBadInput = 2;

// Any failure reading inputs or writing outputs maps to this.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::shared_ptr<const SparseDataset> load_problem_data(const ProblemSpec& p) {
  try {
    const auto registry = DatasetRegistry::load_default();
    return std::make_shared<const SparseDataset>(resolve_dataset(p.dataset, registry, p.subset, p.data_seed));
  } catch (const std::exception& e) {
    throw InputError("dataset '" + p.dataset + "': " + e.what());
  }
}

void print_summary(const ExperimentResult& r) {
  std::printf("%s (N=%lld)\n", r.problem.c_str(), static_cast<long long>(r.population));
  std::printf("  %-12s %7s %14s %10s %10s\n", "method", "solved", "tau_mean", "iters", "epochs");
  for (const auto& s : r.summaries) {
    std::printf("  %-12s %3lld/%-3lld %14.6g %10.1f %10.2f\n", s.method.c_str(), static_cast<long long>(s.solved),
                static_cast<long long>(s.runs), s.tau_mean, s.iterations_mean, s.epochs_mean);
  }
  for (const auto& o : r.runs) {
    if (!o.error.empty()) std::printf("  %s run %lld failed: %s\n", o.method.c_str(), static_cast<long long>(o.run), o.error.c_str());
  }
}

bool all_solved(const std::vector<ExperimentResult>& results) {
  for (const auto& r : results) {
    for (const auto& s : r.summaries) {
      if (s.solved != s.runs) return false;
    }
  }
  return true;
}

void write_outputs(const std::vector<ExperimentResult>& results, const std::optional<ProfileTable>& profile,
                   const OutputOptions& out) {
  try {
    const auto files = emit(results, profile, out.dir, {.plots = out.plots, .timing = out.timing});
    if (profile) {
      const auto path = out.dir / "costs.csv";
      std::ofstream f(path);
      write_costs_csv(f, cost_table(results));
      if (!f) throw std::runtime_error("write failed: " + path.string());
    }
    std::printf("wrote %zu files to %s\n", files.size() + (profile ? 1 : 0), out.dir.string().c_str());
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

int cmd_run(const std::string& path, const std::vector<std::string>& overrides) {
  const RunConfig cfg = load_run_config(path, overrides);
  const auto data = load_problem_data(cfg.experiment.problem);
  const ExperimentResult result = run_experiment(cfg.experiment, data);
  print_summary(result);
  write_outputs({result}, std::nullopt, cfg.output);
  return all_solved({result}) ? kOk : kNotConverged;
}

int cmd_bench(const std::string& path, const std::vector<std::string>& overrides) {
  const SuiteConfig suite = load_suite_config(path, overrides);
  std::vector<ExperimentResult> results;
  for (const auto& problem : suite.problems) {
    ExperimentConfig cfg = suite.base;
    cfg.problem = problem;
    const auto data = load_problem_data(problem);
    results.push_back(run_experiment(cfg, data));
    print_summary(results.back());
  }
  const ProfileTable profile = performance_profile(cost_table(results));
  write_outputs(results, profile, suite.output);
  for (std::size_t m = 0; m < profile.methods.size(); ++m) {
    std::printf("  %-12s solved fraction %.3f\n", profile.methods[m].c_str(), profile.solved_fraction(m));
  }
  return all_solved(results) ? kOk : kNotConverged;
}

int cmd_profile(const std::string& costs_path, const std::string& out_path) {
  std::ifstream in(costs_path);
  if (!in) throw InputError("cannot read " + costs_path);
  const CostTable costs = read_costs_csv(in);
  const ProfileTable profile = performance_profile(costs);
  if (out_path.empty() || out_path == "-") {
    write_profile_csv(std::cout, profile);
  } else {
    std::ofstream out(out_path);
    write_profile_csv(out, profile);
    if (!out) throw InputError("write failed: " + out_path);
  }
  return kOk;
}

int cmd_check_grad(const std::string& objective, const std::string& dataset, Index subset, Index points,
                   double h, double alpha, std::uint64_t seed) {
  ProblemSpec spec;
  spec.dataset = dataset;
  spec.subset = subset;
  spec.data_seed = seed;
  const auto data = load_problem_data(spec);
  const DatasetObjective f(data, parse_loss_kind(objective), alpha);
  const DerivativeCheck c = check_derivatives(f, points, h, seed);
  constexpr double grad_tol = 1e-5;
  constexpr double hvp_tol = 1e-4;
  std::printf("%s on %s (N=%lld, n=%lld), %lld points, h=%g\n", f.name().c_str(), data->name().c_str(),
              static_cast<long long>(data->num_samples()), static_cast<long long>(data->num_features()),
              static_cast<long long>(points), h);
  std::printf("  gradient max rel error %.3e (tol %.0e)\n", c.gradient_rel, grad_tol);
  std::printf("  hvp      max rel error %.3e (tol %.0e)\n", c.hvp_rel, hvp_tol);
  return c.gradient_rel <= grad_tol && c.hvp_rel <= hvp_tol ? kOk : kNotConverged;
}

int cmd_theory(const TheoryParams& tp, const std::vector<Index>& ks) {
  tp.validate();
  const ConstantChain chain = kappa_chain(tp);
  std::cout << describe(tp, chain);
  for (Index k : ks) {
    std::printf("complexity_bound(k=%lld) = %.6g\n", static_cast<long long>(k), complexity_bound(chain, tp, k));
  }
  return kOk;
}

int cmd_fetch(const std::string& name, bool force) {
  const auto registry = DatasetRegistry::load_default();
  const DatasetEntry* entry = registry.find(name);
  if (!entry) throw InputError("unknown dataset '" + name + "'");
  if (entry->synthetic) {
    std::printf("%s is generated on demand, nothing to fetch\n", name.c_str());
    return kOk;
  }
  try {
    const auto path = fetch_dataset(*entry, data_dir(), force);
    std::printf("%s\n", path.string().c_str());
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  return kOk;
}

int cmd_list() {
  const auto registry = DatasetRegistry::load_default();
  const auto dir = data_dir();
  std::printf("%-10s %10s %8s  %s\n", "name", "samples", "features", "status");
  for (const auto& e : registry.entries()) {
    const char* status = e.synthetic ? "synthetic" : (std::filesystem::exists(dir / e.file) ? "cached" : "missing");
    std::printf("%-10s %10lld %8lld  %s\n", e.name.c_str(), static_cast<long long>(e.samples),
                static_cast<long long>(e.features), status);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic adaptive-regularization optimizer (StOFFAR) experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  auto* run = app.add_subcommand("run", "Run one experiment from a config file");
  run->add_option("--config", config_path, "INI config file")->required();
  run->add_option("--override", overrides, "section.key=value, repeatable");

  std::string suite_path;
  auto* bench = app.add_subcommand("bench", "Run a multi-problem suite and build a performance profile");
  bench->add_option("--suite", suite_path, "INI suite file")->required();
  bench->add_option("--override", overrides, "section.key=value, repeatable");

  std::string costs_path;
  std::string profile_out;
  auto* profile = app.add_subcommand("profile", "Performance profile from a method,problem,tau table");
  profile->add_option("--costs", costs_path, "costs CSV")->required();
  profile->add_option("--out", profile_out, "output CSV (default stdout)");

  std::string objective = "nc_logistic";
  std::string dataset = "synth-a9a";
  Index subset = 1000;
  Index points = 100;
  double h = 1e-5;
  double alpha = 0.001;
  std::uint64_t seed = 1;
  auto* check = app.add_subcommand("check-grad", "Finite-difference check of an ML objective");
  check->add_option("--objective", objective, "sigmoid_ls or nc_logistic")->required();
  check->add_option("--dataset", dataset, "registry name or LIBSVM path")->required();
  check->add_option("--subset", subset, "rows to keep (0 = all)")->capture_default_str();
  check->add_option("--points", points, "random points")->capture_default_str();
  check->add_option("--step", h, "difference step h")->capture_default_str();
  check->add_option("--alpha", alpha, "regularization weight")->capture_default_str();
  check->add_option("--seed", seed, "random seed")->capture_default_str();

  TheoryParams tp;
  std::vector<Index> ks;
  auto* theory = app.add_subcommand("theory", "Print the constant chain and bounds");
  theory->add_option("--p", tp.p, "model degree (1 or 2)")->capture_default_str();
  theory->add_option("--L", tp.lipschitz, "Lipschitz constant L_p (>= 3)")->capture_default_str();
  theory->add_option("--kappa-d", tp.kappa_d, "derivative accuracy constant")->capture_default_str();
  theory->add_option("--sigma0", tp.sigma0, "initial regularization")->capture_default_str();
  theory->add_option("--theta1", tp.theta1, "step condition constant")->capture_default_str();
  theory->add_option("--m", tp.m, "memory")->capture_default_str();
  theory->add_option("--kappa-high", tp.kappa_high, "bound on the high-order term")->capture_default_str();
  theory->add_option("--gamma0", tp.gamma0, "E[f(x0) - f_low]")->capture_default_str();
  theory->add_option("--eg0", tp.e_g0, "E||G_0||^((p+1)/p)")->capture_default_str();
  theory->add_option("--k", ks, "iterations at which to print the complexity bound");

  bool force = false;
  std::string fetch_name;
  auto* datasets = app.add_subcommand("datasets", "Dataset registry");
  datasets->require_subcommand(1);
  auto* fetch = datasets->add_subcommand("fetch", "Download a dataset into $STOFFAR_DATA_DIR");
  fetch->add_option("name", fetch_name, "registry name")->required();
  fetch->add_flag("--force", force, "download even if cached");
  auto* list = datasets->add_subcommand("list", "Show registry entries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*run) return cmd_run(config_path, overrides);
    if (*bench) return cmd_bench(suite_path, overrides);
    if (*profile) return cmd_profile(costs_path, profile_out);
    if (*check) return cmd_check_grad(objective, dataset, subset, points, h, alpha, seed);
    if (*theory) return cmd_theory(tp, ks);
    if (*fetch) return cmd_fetch(fetch_name, force);
    if (*list) return cmd_list();
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kBadInput;
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBadInput;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return kBadInput;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return kBadInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBadInput;
  }
  return kBadInput;
}
