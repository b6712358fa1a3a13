#pragma once

#include <atomic>
#include <cstdint>

namespace stoffar {

struct CounterSnapshot {
  std::uint64_t grad_evals = 0;     // per-sample gradient evaluations
  std::uint64_t hvp_evals = 0;      // Hessian-vector products
  std::uint64_t samples_drawn = 0;  // indices drawn by the sampler
  double full_passes = 0.0;         // samples_drawn / population (epochs)
};

/// Evaluation accounting owned by a problem instance. Updates are atomic so
/// that independent readers never observe torn values; counts only grow.
class Counters {
 public:
  explicit Counters(std::uint64_t population = 1) noexcept : population_(population ? population : 1) {}

  Counters(const Counters&) = delete;
  Counters& operator=(const Counters&) = delete;

  void add_gradients(std::uint64_t n) noexcept { grad_evals_.fetch_add(n, std::memory_order_relaxed); }
  void add_hvps(std::uint64_t n) noexcept { hvp_evals_.fetch_add(n, std::memory_order_relaxed); }
  void add_samples(std::uint64_t n) noexcept { samples_drawn_.fetch_add(n, std::memory_order_relaxed); }

  CounterSnapshot snapshot() const noexcept {
    CounterSnapshot s;
    s.grad_evals = grad_evals_.load(std::memory_order_relaxed);
    s.hvp_evals = hvp_evals_.load(std::memory_order_relaxed);
    s.samples_drawn = samples_drawn_.load(std::memory_order_relaxed);
    s.full_passes = static_cast<double>(s.samples_drawn) / static_cast<double>(population_);
    return s;
  }

  std::uint64_t population() const noexcept { return population_; }

  void reset() noexcept {
    grad_evals_.store(0, std::memory_order_relaxed);
    hvp_evals_.store(0, std::memory_order_relaxed);
    samples_drawn_.store(0, std::memory_order_relaxed);
  }

 private:
  std::uint64_t population_;
  std::atomic<std::uint64_t> grad_evals_{0};
  std::atomic<std::uint64_t> hvp_evals_{0};
  std::atomic<std::uint64_t> samples_drawn_{0};
};

}  // namespace stoffar
