#include "stoffar/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <unordered_set>

namespace stoffar {

std::string to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::theory: return "theory";
    case ScheduleKind::practical: return "practical";
    case ScheduleKind::wngrad: return "wngrad";
    case ScheduleKind::fixed: return "fixed";
    case ScheduleKind::exact: return "exact";
  }
  return "unknown";
}

ScheduleKind parse_schedule_kind(const std::string& name) {
  for (auto k : {ScheduleKind::theory, ScheduleKind::practical, ScheduleKind::wngrad,
                 ScheduleKind::fixed, ScheduleKind::exact}) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown schedule kind '" + name + "'");
}

void BatchSchedule::validate() const {
  auto frac_ok = [](double f) { return f > 0.0 && f <= 1.0; };
  if (!frac_ok(floor_g_frac) || !frac_ok(floor_h_frac)) {
    throw std::invalid_argument("BatchSchedule: floor fractions must lie in (0, 1]");
  }
  if (kappa_d < 0.0 || sigma_g < 0.0 || sigma_h < 0.0) {
    throw std::invalid_argument("BatchSchedule: constants must be nonnegative");
  }
  if (fixed_g < 1 || fixed_h < 1) throw std::invalid_argument("BatchSchedule: fixed sizes must be >= 1");
}

Index clamp_batch(double raw, Index population) {
  if (population < 1) throw std::invalid_argument("clamp_batch: empty population");
  if (std::isnan(raw)) throw std::invalid_argument("clamp_batch: NaN batch size");
  if (!(raw < static_cast<double>(population))) return population;
  const double c = std::ceil(raw * (1.0 - 4 * std::numeric_limits<double>::epsilon()));
  return std::clamp<Index>(static_cast<Index>(c), 1, population);
}

std::optional<Index> batch_size_gradient_theory(double kappa_d, double sigma_g, double xi,
                                                Index population) {
  if (kappa_d < 0.0 || xi < 0.0 || sigma_g < 0.0) {
    throw std::invalid_argument("batch_size_gradient_theory: negative input");
  }
  if (kappa_d == 0.0 || xi == 0.0) return std::nullopt;
  return clamp_batch(sigma_g * sigma_g / std::pow(kappa_d * xi, 4.0 / 3.0), population);
}

std::optional<Index> batch_size_hessian_theory(double kappa_d, double sigma_h, double xi, Index n,
                                               Index population) {
  if (n < 2) throw std::invalid_argument("batch_size_hessian_theory: requires n >= 2");
  if (kappa_d < 0.0 || xi < 0.0 || sigma_h < 0.0) {
    throw std::invalid_argument("batch_size_hessian_theory: negative input");
  }
  if (kappa_d == 0.0 || xi == 0.0) return std::nullopt;
  const double raw = 9.0 * sigma_h * sigma_h * std::numbers::e * std::log(static_cast<double>(n)) /
                     (2.0 * std::pow(kappa_d * xi, 2.0 / 3.0));
  return clamp_batch(raw, population);
}

std::pair<Index, Index> batch_size_practical(Index k, double xi, Index population, Index n,
                                             Index memory, Index b_g0, Index b_h0,
                                             double floor_g_frac, double floor_h_frac) {
  const double floor_g = floor_g_frac * static_cast<double>(population);
  const double floor_h = floor_h_frac * static_cast<double>(population);
  if (k == 0) return {clamp_batch(floor_g, population), clamp_batch(floor_h, population)};
  if (n < 2) throw std::invalid_argument("batch_size_practical: requires n >= 2");
  if (xi <= 0.0) return {population, population};
  const double m = static_cast<double>(memory);
  const double c_g = static_cast<double>(b_g0) * std::pow(m, 4.0 / 3.0);
  const double c_h = static_cast<double>(b_h0) * std::pow(m, 2.0 / 3.0) / std::log(static_cast<double>(n));
  return {clamp_batch(std::max(c_g / std::pow(xi, 4.0 / 3.0), floor_g), population),
          clamp_batch(std::max(c_h / std::pow(xi, 2.0 / 3.0), floor_h), population)};
}

Index batch_size_wngrad(Index k, double prev_step_norm, Index population, double floor_frac) {
  const double floor = floor_frac * static_cast<double>(population);
  if (k == 0) return clamp_batch(floor, population);
  if (prev_step_norm <= 0.0) return population;
  return clamp_batch(std::max(floor, 0.1 / (prev_step_norm * prev_step_norm)), population);
}

std::vector<Index> draw_batch(Index population, Index b, bool replacement, Rng& rng) {
  if (b < 1 || b > population) throw std::invalid_argument("draw_batch: size must lie in [1, N]");
  std::vector<Index> out;
  out.reserve(static_cast<std::size_t>(b));
  if (replacement) {
    std::uniform_int_distribution<Index> pick(0, population - 1);
    for (Index i = 0; i < b; ++i) out.push_back(pick(rng));
    std::sort(out.begin(), out.end());
  } else if (b == population) {
    for (Index i = 0; i < population; ++i) out.push_back(i);
  } else if (b * 16 < population) {
    // Floyd's algorithm: b draws instead of a pass over the population.
    std::unordered_set<Index> chosen;
    chosen.reserve(static_cast<std::size_t>(2 * b));
    for (Index j = population - b; j < population; ++j) {
      const Index t = std::uniform_int_distribution<Index>(0, j)(rng);
      const Index pick = chosen.contains(t) ? j : t;
      chosen.insert(pick);
      out.push_back(pick);
    }
    std::sort(out.begin(), out.end());
  } else {
    // Selection sampling (Knuth's algorithm S) keeps the order, so the result is sorted.
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Index need = b;
    for (Index i = 0; i < population && need > 0; ++i) {
      if (static_cast<double>(population - i) * u(rng) < static_cast<double>(need)) {
        out.push_back(i);
        --need;
      }
    }
  }
  return out;
}

SampledEstimate sample_estimate(const FiniteSumObjective& problem, const Vector& x, Index b_g,
                                Index b_h, bool replacement, Rng& rng) {
  const Index pop = problem.num_samples();
  SampledEstimate out;
  out.gradient_indices = draw_batch(pop, b_g, replacement, rng);
  out.estimate.gradient = problem.batch_gradient(x, out.gradient_indices);
  out.estimate.batch_gradient = b_g;
  problem.counters().add_gradients(static_cast<std::uint64_t>(b_g));
  problem.counters().add_samples(static_cast<std::uint64_t>(b_g));
  if (b_h > 0) {
    out.hessian_indices = draw_batch(pop, b_h, replacement, rng);
    out.estimate.hessian =
        problem.batch_hessian(x, out.hessian_indices).with_counters(&problem.counters());
    out.estimate.batch_hessian = b_h;
    problem.counters().add_samples(static_cast<std::uint64_t>(b_h));
  }
  out.estimate.exact = !replacement && b_g == pop && (b_h == 0 || b_h == pop);
  return out;
}

SampledEstimator::SampledEstimator(const FiniteSumObjective& problem, BatchSchedule schedule)
    : problem_(problem), schedule_(schedule) {
  schedule_.validate();
}

std::pair<Index, Index> SampledEstimator::batch_sizes(const EstimateRequest& req) const {
  const Index pop = problem_.num_samples();
  const Index n = problem_.dimension();
  const double xi = req.history != nullptr ? req.history->xi() : 1.0;
  const Index memory = req.history != nullptr ? req.history->memory() : 1;
  switch (schedule_.kind) {
    case ScheduleKind::exact:
      return {pop, pop};
    case ScheduleKind::fixed:
      return {std::min(schedule_.fixed_g, pop), std::min(schedule_.fixed_h, pop)};
    case ScheduleKind::theory: {
      const auto bg = batch_size_gradient_theory(schedule_.kappa_d, schedule_.sigma_g, xi, pop);
      const auto bh = batch_size_hessian_theory(schedule_.kappa_d, schedule_.sigma_h, xi,
                                                std::max<Index>(n, 2), pop);
      return {bg.value_or(pop), bh.value_or(pop)};
    }
    case ScheduleKind::practical: {
      const auto [b_g0, b_h0] = batch_size_practical(0, xi, pop, n, memory, 0, 0,
                                                     schedule_.floor_g_frac, schedule_.floor_h_frac);
      return batch_size_practical(req.k, xi, pop, std::max<Index>(n, 2), memory, b_g0, b_h0,
                                  schedule_.floor_g_frac, schedule_.floor_h_frac);
    }
    case ScheduleKind::wngrad: {
      const double prev = req.history != nullptr ? req.history->last() : 1.0;
      return {batch_size_wngrad(req.k, prev, pop, schedule_.floor_g_frac), 0};
    }
  }
  throw std::logic_error("SampledEstimator: unhandled schedule");
}

GradientEstimate SampledEstimator::gradient(const Vector& x, const EstimateRequest& req, Rng& rng) {
  const Index b = batch_sizes(req).first;
  const auto idx = draw_batch(problem_.num_samples(), b, schedule_.replacement, rng);
  problem_.counters().add_gradients(static_cast<std::uint64_t>(b));
  problem_.counters().add_samples(static_cast<std::uint64_t>(b));
  GradientEstimate out;
  out.gradient = problem_.batch_gradient(x, idx);
  out.batch = b;
  out.exact = !schedule_.replacement && b == problem_.num_samples();
  return out;
}

HessianEstimate SampledEstimator::hessian(const Vector& x, const EstimateRequest& req, Rng& rng) {
  const Index b = std::max<Index>(batch_sizes(req).second, 1);
  const auto idx = draw_batch(problem_.num_samples(), b, schedule_.replacement, rng);
  problem_.counters().add_samples(static_cast<std::uint64_t>(b));
  return {problem_.batch_hessian(x, idx).with_counters(&problem_.counters()), b};
}

NoiseConstants estimate_noise_constants(const FiniteSumObjective& problem, const Vector& x,
                                        std::span<const Index> indices) {
  const std::span<const Index> use = indices.empty() ? problem.all_indices() : indices;
  const Vector g = problem.gradient(x);
  const Matrix h = problem.hessian(x).dense();
  double g_sum = 0.0;
  double h_sum = 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> eig;
  for (Index i : use) {
    g_sum += (problem.sample_gradient(x, i) - g).squaredNorm();
    const Matrix d = problem.sample_hessian(x, i).dense() - h;
    eig.compute(d, Eigen::EigenvaluesOnly);
    const double spec = eig.eigenvalues().cwiseAbs().maxCoeff();
    h_sum += spec * spec * spec;
  }
  const double count = static_cast<double>(use.size());
  return {std::sqrt(g_sum / count), std::cbrt(h_sum / count)};
}

namespace {

double spectral_norm(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

struct Accumulator {
  double sum = 0.0;
  double sum_sq = 0.0;
  Index count = 0;
  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++count;
  }
  double mean() const { return sum / static_cast<double>(count); }
  double stderr_() const {
    if (count < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (sum_sq - static_cast<double>(count) * m * m) /
                                         static_cast<double>(count - 1));
    return std::sqrt(var / static_cast<double>(count));
  }
};

}  // namespace

MomentReport validate_moment_bounds(const MomentGenerator& gen, Index trials, std::uint64_t seed) {
  if (trials < 2) throw std::invalid_argument("validate_moment_bounds: need at least 2 trials");
  if (gen.count < 1) throw std::invalid_argument("validate_moment_bounds: count must be >= 1");
  Rng rng = make_stream(seed, RngStream::probe);
  const double big_n = static_cast<double>(gen.count);
  MomentReport report;

  if (gen.vector_sample) {
    Accumulator moment;
    Accumulator second;
    for (Index t = 0; t < trials; ++t) {
      Vector sum = Vector::Zero(gen.dimension);
      for (Index i = 0; i < gen.count; ++i) {
        const Vector z = gen.vector_sample(rng);
        second.add(z.squaredNorm());
        sum += z;
      }
      moment.add(std::pow((sum / big_n).norm(), 1.5));
    }
    const double e2 = gen.vector_second_moment.value_or(second.mean());
    MomentCheck c;
    c.empirical = moment.mean();
    c.stderr_ = moment.stderr_();
    c.bound = std::pow(e2, 0.75) / std::pow(big_n, 0.75);
    c.passed = c.empirical <= c.bound + 3.0 * c.stderr_;
    report.vector = c;
  }

  if (gen.matrix_sample) {
    const double q = 3.0;
    const double r = std::max(q, 2.0 * std::log(static_cast<double>(gen.dimension)));
    Accumulator cube;
    Accumulator max_cube;
    Matrix second = Matrix::Zero(gen.dimension, gen.dimension);
    for (Index t = 0; t < trials; ++t) {
      Matrix sum = Matrix::Zero(gen.dimension, gen.dimension);
      double worst = 0.0;
      for (Index i = 0; i < gen.count; ++i) {
        const Matrix y = gen.matrix_sample(rng);
        if (!gen.matrix_second_moment) second += y * y;
        worst = std::max(worst, spectral_norm(y));
        sum += y;
      }
      const double s = spectral_norm(sum);
      cube.add(s * s * s);
      max_cube.add(worst * worst * worst);
    }
    // Sum over i of E Y_i^2 is N E Y^2 for identically distributed samples.
    const Matrix sum_second = gen.matrix_second_moment
                                  ? Matrix(big_n * *gen.matrix_second_moment)
                                  : Matrix(second / static_cast<double>(trials));
    MomentCheck c;
    c.empirical = std::cbrt(cube.mean());
    // delta method: d(m^(1/3)) = dm / (3 m^(2/3))
    c.stderr_ = cube.mean() > 0.0 ? cube.stderr_() / (3.0 * std::pow(cube.mean(), 2.0 / 3.0)) : 0.0;
    c.bound = 2.0 * std::sqrt(std::numbers::e * r) * std::sqrt(spectral_norm(sum_second)) +
              4.0 * std::numbers::e * r * std::cbrt(max_cube.mean());
    c.passed = c.empirical <= c.bound + 3.0 * c.stderr_;
    report.matrix = c;
  }
  return report;
}

}  // namespace stoffar
