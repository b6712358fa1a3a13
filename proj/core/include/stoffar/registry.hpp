#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stoffar/dataset.hpp"

namespace stoffar {

struct DatasetEntry {
  std::string name;
  Index samples = 0;
  Index features = 0;
  std::string url;
  std::string file;
  std::string checksum;  // sha256 hex, may be empty
  bool synthetic = false;
};

class DatasetRegistry {
 public:
  static DatasetRegistry load(const std::filesystem::path& path);
  /// $STOFFAR_REGISTRY if set, else the registry installed with the library.
  static DatasetRegistry load_default();

  const DatasetEntry* find(const std::string& name) const;
  const std::vector<DatasetEntry>& entries() const noexcept { return entries_; }

 private:
  std::vector<DatasetEntry> entries_;
};

/// $STOFFAR_DATA_DIR, or ./data when unset.
std::filesystem::path data_dir();

/// Resolves a dataset reference: a registry name (file under data_dir(), or
/// generated for synthetic entries) or a path to a LIBSVM file. When
/// subset_size is positive, a deterministic subset is taken with the seed
/// (synthetic entries generate exactly that many rows).
SparseDataset resolve_dataset(const std::string& ref, const DatasetRegistry& registry,
                              Index subset_size = 0, std::uint64_t seed = 0);

/// Downloads a registry entry into dir (created if needed) and returns the
/// file path. Existing files are kept.
std::filesystem::path fetch_dataset(const DatasetEntry& entry, const std::filesystem::path& dir,
                                    bool force = false);

}  // namespace stoffar
