#include <random>

#include <benchmark/benchmark.h>

#include "stoffar/subproblem.hpp"

using namespace stoffar;

namespace {

struct Instance {
  Vector g;
  Matrix h;
};

Instance make_instance(Index n) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(n));
  std::normal_distribution<double> normal;
  Instance in{Vector(n), Matrix(n, n)};
  for (Index i = 0; i < n; ++i) in.g(i) = normal(rng);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) in.h(i, j) = normal(rng);
  }
  in.h = 0.5 * (in.h + in.h.transpose());
  return in;
}

void BM_ExactSecular(benchmark::State& state) {
  const auto in = make_instance(state.range(0));
  const auto h = HessianOperator::from_dense(in.h);
  SolverConfig cfg;
  cfg.method = SolverMethod::exact_secular;
  for (auto _ : state) benchmark::DoNotOptimize(solve_exact_secular(in.g, h, 1.0, cfg));
}
BENCHMARK(BM_ExactSecular)->Arg(10)->Arg(50)->Arg(123)->Arg(300);

void BM_MatrixFree(benchmark::State& state) {
  const auto in = make_instance(state.range(0));
  const auto h = HessianOperator::from_dense(in.h);
  SolverConfig cfg;
  cfg.method = SolverMethod::matrix_free;
  for (auto _ : state) benchmark::DoNotOptimize(solve_matrix_free(in.g, h, 1.0, cfg));
}
BENCHMARK(BM_MatrixFree)->Arg(10)->Arg(50)->Arg(123)->Arg(300);

void BM_MatrixFreeTight(benchmark::State& state) {
  const auto in = make_instance(state.range(0));
  const auto h = HessianOperator::from_dense(in.h);
  SolverConfig cfg;
  cfg.method = SolverMethod::matrix_free;
  cfg.krylov_tol = 1e-10;
  for (auto _ : state) benchmark::DoNotOptimize(solve_matrix_free(in.g, h, 1.0, cfg));
}
BENCHMARK(BM_MatrixFreeTight)->Arg(10)->Arg(50)->Arg(123);

}  // namespace
