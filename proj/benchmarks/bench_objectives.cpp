#include <memory>
#include <random>

#include <benchmark/benchmark.h>

#include "stoffar/objectives.hpp"
#include "stoffar/sampling.hpp"

using namespace stoffar;

namespace {

std::shared_ptr<const SparseDataset> data(Index n) {
  static auto ds = std::make_shared<const SparseDataset>(synthetic_a9a(32561, 1));
  return n == ds->num_samples() ? ds : std::make_shared<const SparseDataset>(subset(*ds, n, 2));
}

Vector start(Index n) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal(0.0, 0.1);
  Vector x(n);
  for (Index i = 0; i < n; ++i) x(i) = normal(rng);
  return x;
}

void BM_FullGradient(benchmark::State& state) {
  const DatasetObjective f(data(state.range(0)), LossKind::nc_logistic);
  const Vector x = start(f.dimension());
  for (auto _ : state) benchmark::DoNotOptimize(f.gradient(x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FullGradient)->Arg(2000)->Arg(32561);

void BM_SubsampledHvp(benchmark::State& state) {
  const DatasetObjective f(data(32561), LossKind::nc_logistic);
  const Vector x = start(f.dimension());
  Rng rng = make_stream(1, RngStream::estimator);
  const auto batch = draw_batch(f.num_samples(), state.range(0), false, rng);
  const HessianOperator h = f.batch_hessian(x, batch);
  const Vector v = start(f.dimension());
  for (auto _ : state) benchmark::DoNotOptimize(h.apply(v));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SubsampledHvp)->Arg(100)->Arg(1628)->Arg(32561);

void BM_DrawBatch(benchmark::State& state) {
  Rng rng = make_stream(3, RngStream::estimator);
  for (auto _ : state) benchmark::DoNotOptimize(draw_batch(32561, state.range(0), false, rng));
}
BENCHMARK(BM_DrawBatch)->Arg(100)->Arg(6513)->Arg(32561);

}  // namespace
