#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "stoffar/experiment.hpp"
#include "stoffar/profile.hpp"

namespace stoffar {

struct EmitOptions {
  bool plots = false;
  bool timing = false;
};

/// Writes into dir (created if needed):
///   trace.csv      method,problem,run then the run record columns
///   aggregate.csv  per-method mean curves
///   summary.csv    per-method tau and convergence
///   loss_gap.csv   traced exact losses and their gap to f_star
///   profile.csv    when a profile is given
///   loss.svg, samples.svg when plots are enabled
/// Returns the paths written. I/O failures throw with the offending path.
std::vector<std::filesystem::path> emit(const std::vector<ExperimentResult>& results,
                                        const std::optional<ProfileTable>& profile,
                                        const std::filesystem::path& dir, const EmitOptions& opts = {});

/// Cost table (mean tau, or unsolved) over all results.
CostTable cost_table(const std::vector<ExperimentResult>& results);

/// Line plot written as a standalone SVG document.
struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};
void write_svg_plot(const std::filesystem::path& path, const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<PlotSeries>& series, bool log_y);

}  // namespace stoffar
