#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "stoffar/experiment.hpp"

namespace stoffar {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::filesystem::path dir = "out";
  bool plots = false;
  bool timing = false;  // fill the wall_ms column (makes output nondeterministic)
};

struct RunConfig {
  ExperimentConfig experiment;
  OutputOptions output;
};

/// A run configuration plus several problems; the [experiment] problem keys
/// act as defaults for every [problem.<name>] section.
struct SuiteConfig {
  ExperimentConfig base;
  std::vector<ProblemSpec> problems;
  OutputOptions output;
};

/// INI file with sections [experiment], [output], [offar2], [wngrad]
/// (and [problem.<name>] in suites). Overrides are "section.key=value" and
/// take precedence over the file, which takes precedence over defaults.
RunConfig load_run_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});
RunConfig parse_run_config(const std::string& text, const std::vector<std::string>& overrides = {});
SuiteConfig load_suite_config(const std::filesystem::path& path, const std::vector<std::string>& overrides = {});
SuiteConfig parse_suite_config(const std::string& text, const std::vector<std::string>& overrides = {});

/// Comma-separated "offar2-<m>" / "wngrad" labels, with family defaults.
std::vector<MethodSpec> parse_methods(const std::string& list);

}  // namespace stoffar
