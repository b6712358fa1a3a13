#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stoffar/linalg.hpp"

namespace stoffar {

enum class RunStatus { converged, max_iters };

std::string to_string(RunStatus status);

/// One optimizer iteration. The CSV columns are the first twelve fields in
/// declaration order; the rest are kept for aggregation and reporting.
struct IterationRow {
  Index k = 0;
  double grad_norm_est = 0.0;
  std::optional<double> grad_norm_exact;
  double sigma = 0.0;
  double step_norm = 0.0;
  double xi = 0.0;
  Index batch_gradient = 0;
  Index batch_hessian = 0;
  Index ege = 0;
  double tau = 0.0;
  double model_delta = 0.0;
  double wall_ms = 0.0;

  std::uint64_t samples_drawn = 0;  // cumulative
  double epoch = 0.0;               // samples_drawn / N
  std::optional<double> loss;       // exact f(x_k), reporting only
};

struct RunRecord {
  std::vector<IterationRow> rows;
  RunStatus status = RunStatus::max_iters;
  Vector x_final;

  double tau() const noexcept { return rows.empty() ? 0.0 : rows.back().tau; }
  Index iterations() const noexcept { return static_cast<Index>(rows.size()); }
};

/// CSV column names, in order.
const std::vector<std::string>& run_record_columns();

struct CsvOptions {
  /// wall_ms is the only nondeterministic column; when false it is left empty
  /// so that identical runs produce identical bytes.
  bool include_timing = false;
  /// Leading key columns (name=value pairs written before the record columns).
  std::vector<std::pair<std::string, std::string>> keys;
};

void write_run_record_header(std::ostream& out, const CsvOptions& opts = {});
void write_run_record_rows(std::ostream& out, const RunRecord& record, const CsvOptions& opts = {});

/// Shortest round-trip text for a double ("inf"/"nan" for non-finite values).
std::string format_double(double v);

}  // namespace stoffar
