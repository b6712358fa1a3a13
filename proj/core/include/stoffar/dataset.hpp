#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stoffar/linalg.hpp"

namespace stoffar {

/// Row-compressed binary classification data. Indices are 0-based and
/// strictly increasing within a row; labels are 0 or 1.
class SparseDataset {
 public:
  /// How labels were written in the source file; kept so a round trip
  /// reproduces the original text.
  enum class LabelStyle { zero_one, plus_minus };

  SparseDataset() = default;

  Index num_samples() const noexcept { return static_cast<Index>(labels_.size()); }
  Index num_features() const noexcept { return features_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  LabelStyle label_style() const noexcept { return style_; }
  void set_label_style(LabelStyle s) noexcept { style_ = s; }

  /// Widens the feature space (never narrows below the largest index seen).
  void set_num_features(Index n);

  /// Appends a row; indices must be strictly increasing and nonnegative.
  void add_row(std::span<const Index> indices, std::span<const double> values, int label);

  std::span<const Index> row_indices(Index i) const;
  std::span<const double> row_values(Index i) const;
  int label(Index i) const { return labels_[static_cast<std::size_t>(i)]; }
  std::span<const int> labels() const noexcept { return labels_; }

  /// a_i' x
  double row_dot(Index i, const Vector& x) const;
  /// out += alpha a_i
  void row_axpy(Index i, double alpha, Vector& out) const;
  double row_norm(Index i) const;

  Index nonzeros() const noexcept { return static_cast<Index>(indices_.size()); }

  bool operator==(const SparseDataset& other) const;

 private:
  std::string name_;
  Index features_ = 0;
  LabelStyle style_ = LabelStyle::plus_minus;
  std::vector<std::size_t> offsets_{0};
  std::vector<Index> indices_;
  std::vector<double> values_;
  std::vector<int> labels_;
};

/// count rows chosen pseudo-randomly from seed, kept in their original order.
/// count = N returns the dataset unchanged.
SparseDataset subset(const SparseDataset& ds, Index count, std::uint64_t seed);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// LIBSVM text: "label idx:val idx:val ..." with 1-based increasing indices.
/// Labels in {-1,+1} or {0,1} are mapped to {0,1}. When declared_features is
/// given, indices above it are rejected; otherwise n is the largest index.
SparseDataset parse_libsvm(std::istream& in, std::optional<Index> declared_features = std::nullopt);

/// Inverse of parse_libsvm: labels in the dataset's label style, values in
/// shortest round-trip form.
void write_libsvm(std::ostream& out, const SparseDataset& ds);

/// Opens a file, decompressing .bz2, .xz, and .gz on the fly.
SparseDataset load_libsvm(const std::filesystem::path& path,
                          std::optional<Index> declared_features = std::nullopt);

/// Stand-in generator shaped like a9a: 14 one-hot categorical groups over 123
/// binary features, labels drawn from a hidden logistic model.
SparseDataset synthetic_a9a(Index samples, std::uint64_t seed);

}  // namespace stoffar
