#include "stoffar/registry.hpp"

#include <cstdlib>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#ifndef STOFFAR_REGISTRY_DEFAULT
#define STOFFAR_REGISTRY_DEFAULT "registry.ini"
#endif

namespace stoffar {

DatasetRegistry DatasetRegistry::load(const std::filesystem::path& path) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::runtime_error("registry: " + std::string(e.what()));
  }
  DatasetRegistry reg;
  for (const auto& [name, section] : tree) {
    DatasetEntry e;
    e.name = name;
    e.samples = section.get<Index>("samples", 0);
    e.features = section.get<Index>("features", 0);
    e.url = section.get<std::string>("url", "");
    e.file = section.get<std::string>("file", name);
    e.checksum = section.get<std::string>("checksum", "");
    e.synthetic = section.get<bool>("synthetic", false);
    reg.entries_.push_back(std::move(e));
  }
  return reg;
}

DatasetRegistry DatasetRegistry::load_default() {
  if (const char* env = std::getenv("STOFFAR_REGISTRY"); env != nullptr && *env != '\0') {
    return load(env);
  }
  return load(STOFFAR_REGISTRY_DEFAULT);
}

const DatasetEntry* DatasetRegistry::find(const std::string& name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("STOFFAR_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return "data";
}

SparseDataset resolve_dataset(const std::string& ref, const DatasetRegistry& registry,
                              Index subset_size, std::uint64_t seed) {
  if (const DatasetEntry* e = registry.find(ref)) {
    if (e->synthetic) {
      SparseDataset ds = synthetic_a9a(subset_size > 0 ? subset_size : e->samples, seed);
      ds.set_name(e->name);
      return ds;
    }
    const auto path = data_dir() / e->file;
    if (!std::filesystem::exists(path)) {
      throw std::runtime_error("dataset '" + ref + "' not found at " + path.string() +
                               " (run `stoffar datasets fetch " + ref + "`)");
    }
    SparseDataset ds = load_libsvm(path, e->features);
    ds.set_name(e->name);
    return subset_size > 0 ? subset(ds, subset_size, seed) : ds;
  }
  if (!std::filesystem::exists(ref)) {
    throw std::runtime_error("dataset '" + ref + "' is neither a registry name nor a file");
  }
  SparseDataset ds = load_libsvm(ref);
  return subset_size > 0 ? subset(ds, subset_size, seed) : ds;
}

}  // namespace stoffar
