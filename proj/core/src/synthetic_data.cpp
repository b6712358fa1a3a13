#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "stoffar/dataset.hpp"

namespace stoffar {

SparseDataset synthetic_a9a(Index samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("synthetic_a9a: samples must be >= 1");
  // One-hot group widths of the binarized adult census features.
  static constexpr std::array<Index, 14> kGroups = {5, 8, 5, 16, 5, 7, 14, 6, 5, 2, 2, 2, 5, 41};
  constexpr Index kFeatures = 123;

  // The hidden model and category frequencies come from a fixed stream so
  // that every sample size shares them; rows come from the seed.
  Rng model_rng(0x5eed'a9a0ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector w(kFeatures);
  for (Index j = 0; j < kFeatures; ++j) w(j) = 0.8 * gauss(model_rng);
  std::vector<std::discrete_distribution<Index>> pick;
  for (Index width : kGroups) {
    std::vector<double> weights(static_cast<std::size_t>(width));
    for (Index c = 0; c < width; ++c) weights[static_cast<std::size_t>(c)] = 1.0 / (1.0 + c) + 0.05;
    std::shuffle(weights.begin(), weights.end(), model_rng);
    pick.emplace_back(weights.begin(), weights.end());
  }
  const double bias = -1.4;

  Rng rng = make_stream(seed, RngStream::init);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SparseDataset ds;
  ds.set_name("synth-a9a");
  ds.set_label_style(SparseDataset::LabelStyle::plus_minus);
  std::vector<Index> idx(kGroups.size());
  const std::vector<double> ones(kGroups.size(), 1.0);
  for (Index i = 0; i < samples; ++i) {
    Index offset = 0;
    double margin = bias;
    for (std::size_t g = 0; g < kGroups.size(); ++g) {
      idx[g] = offset + pick[g](rng);
      margin += w(idx[g]);
      offset += kGroups[g];
    }
    const double prob = 1.0 / (1.0 + std::exp(-margin));
    ds.add_row(idx, ones, unif(rng) < prob ? 1 : 0);
  }
  ds.set_num_features(kFeatures);
  return ds;
}

}  // namespace stoffar
