#include "stoffar/dataset.hpp"

#include <algorithm>
#include <cmath>

namespace stoffar {

void SparseDataset::set_num_features(Index n) { features_ = std::max(features_, n); }

void SparseDataset::add_row(std::span<const Index> indices, std::span<const double> values, int label) {
  if (indices.size() != values.size()) throw std::invalid_argument("add_row: size mismatch");
  if (label != 0 && label != 1) throw std::invalid_argument("add_row: label must be 0 or 1");
  for (std::size_t j = 0; j < indices.size(); ++j) {
    if (indices[j] < 0) throw std::invalid_argument("add_row: negative index");
    if (j > 0 && indices[j] <= indices[j - 1]) {
      throw std::invalid_argument("add_row: indices must be strictly increasing");
    }
  }
  indices_.insert(indices_.end(), indices.begin(), indices.end());
  values_.insert(values_.end(), values.begin(), values.end());
  offsets_.push_back(indices_.size());
  labels_.push_back(label);
  if (!indices.empty()) features_ = std::max(features_, indices.back() + 1);
}

std::span<const Index> SparseDataset::row_indices(Index i) const {
  const auto r = static_cast<std::size_t>(i);
  return {indices_.data() + offsets_[r], offsets_[r + 1] - offsets_[r]};
}

std::span<const double> SparseDataset::row_values(Index i) const {
  const auto r = static_cast<std::size_t>(i);
  return {values_.data() + offsets_[r], offsets_[r + 1] - offsets_[r]};
}

double SparseDataset::row_dot(Index i, const Vector& x) const {
  const auto r = static_cast<std::size_t>(i);
  double s = 0.0;
  for (std::size_t j = offsets_[r]; j < offsets_[r + 1]; ++j) s += values_[j] * x(indices_[j]);
  return s;
}

void SparseDataset::row_axpy(Index i, double alpha, Vector& out) const {
  const auto r = static_cast<std::size_t>(i);
  for (std::size_t j = offsets_[r]; j < offsets_[r + 1]; ++j) out(indices_[j]) += alpha * values_[j];
}

double SparseDataset::row_norm(Index i) const {
  double s = 0.0;
  for (double v : row_values(i)) s += v * v;
  return std::sqrt(s);
}

bool SparseDataset::operator==(const SparseDataset& o) const {
  return features_ == o.features_ && offsets_ == o.offsets_ && indices_ == o.indices_ &&
         values_ == o.values_ && labels_ == o.labels_;
}

SparseDataset subset(const SparseDataset& ds, Index count, std::uint64_t seed) {
  const Index total = ds.num_samples();
  if (count < 0 || count > total) throw std::invalid_argument("subset: count exceeds dataset size");
  if (count == total) return ds;
  Rng rng = make_stream(seed, RngStream::init);
  std::vector<Index> order(static_cast<std::size_t>(total));
  for (Index i = 0; i < total; ++i) order[static_cast<std::size_t>(i)] = i;
  std::shuffle(order.begin(), order.end(), rng);
  order.resize(static_cast<std::size_t>(count));
  std::sort(order.begin(), order.end());

  SparseDataset out;
  out.set_name(ds.name() + "[" + std::to_string(count) + "]");
  out.set_label_style(ds.label_style());
  for (Index i : order) {
    const auto idx = ds.row_indices(i);
    const auto val = ds.row_values(i);
    out.add_row(idx, val, ds.label(i));
  }
  out.set_num_features(ds.num_features());
  return out;
}

}  // namespace stoffar
