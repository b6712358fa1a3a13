#include "stoffar/run_record.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace stoffar {

std::string to_string(RunStatus status) {
  return status == RunStatus::converged ? "converged" : "max_iters";
}

const std::vector<std::string>& run_record_columns() {
  static const std::vector<std::string> cols = {
      "k",   "grad_norm_est", "grad_norm_exact", "sigma", "step_norm",   "xi",
      "b_g", "b_H",           "ege",             "tau",   "model_delta", "wall_ms"};
  return cols;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_run_record_header(std::ostream& out, const CsvOptions& opts) {
  bool first = true;
  for (const auto& [key, value] : opts.keys) {
    out << (first ? "" : ",") << key;
    first = false;
  }
  for (const auto& c : run_record_columns()) {
    out << (first ? "" : ",") << c;
    first = false;
  }
  out << '\n';
}

void write_run_record_rows(std::ostream& out, const RunRecord& record, const CsvOptions& opts) {
  std::string prefix;
  for (const auto& [key, value] : opts.keys) prefix += value + ",";
  for (const auto& r : record.rows) {
    out << prefix << r.k << ',' << format_double(r.grad_norm_est) << ','
        << (r.grad_norm_exact ? format_double(*r.grad_norm_exact) : "") << ','
        << format_double(r.sigma) << ',' << format_double(r.step_norm) << ','
        << format_double(r.xi) << ',' << r.batch_gradient << ',' << r.batch_hessian << ','
        << r.ege << ',' << format_double(r.tau) << ',' << format_double(r.model_delta) << ','
        << (opts.include_timing ? format_double(r.wall_ms) : "") << '\n';
  }
}

}  // namespace stoffar
