#include <sstream>

#include <benchmark/benchmark.h>

#include "stoffar/dataset.hpp"

using namespace stoffar;

namespace {

void BM_ParseLibsvm(benchmark::State& state) {
  std::ostringstream out;
  write_libsvm(out, synthetic_a9a(state.range(0), 1));
  const std::string text = out.str();
  for (auto _ : state) {
    std::istringstream in(text);
    benchmark::DoNotOptimize(parse_libsvm(in, 123));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ParseLibsvm)->Arg(500)->Arg(32561);

}  // namespace
