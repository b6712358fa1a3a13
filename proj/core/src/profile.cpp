#include "stoffar/profile.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "stoffar/run_record.hpp"

namespace stoffar {
namespace {

std::size_t index_of(std::vector<std::string>& names, const std::string& name) {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it != names.end()) return static_cast<std::size_t>(it - names.begin());
  names.push_back(name);
  return names.size() - 1;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace

void CostTable::set(const std::string& method, const std::string& problem, double value) {
  const std::size_t m = index_of(methods, method);
  const std::size_t p = index_of(problems, problem);
  cost.resize(problems.size());
  for (auto& row : cost) row.resize(methods.size(), kUnsolved);
  cost[p][m] = value;
}

double ProfileTable::evaluate(std::size_t method, double theta) const {
  if (problems.empty()) return 0.0;
  std::size_t count = 0;
  for (const auto& row : ratio) count += row[method] <= theta ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(problems.size());
}

double ProfileTable::solved_fraction(std::size_t method) const {
  return evaluate(method, std::numeric_limits<double>::max());
}

ProfileTable performance_profile(const CostTable& costs) {
  if (costs.methods.empty() || costs.problems.empty()) {
    throw std::invalid_argument("performance_profile: need at least one method and one problem");
  }
  ProfileTable out;
  out.methods = costs.methods;
  out.problems = costs.problems;
  std::vector<double> points{1.0};
  for (const auto& row : costs.cost) {
    if (row.size() != costs.methods.size()) throw std::invalid_argument("performance_profile: ragged cost table");
    double best = kUnsolved;
    for (double c : row) {
      if (std::isnan(c) || c < 0.0) throw std::invalid_argument("performance_profile: costs must be >= 0");
      if (std::isfinite(c)) best = std::min(best, c);
    }
    std::vector<double> r(row.size(), kUnsolved);
    for (std::size_t m = 0; m < row.size(); ++m) {
      if (!std::isfinite(row[m]) || !std::isfinite(best)) continue;
      r[m] = row[m] == best ? 1.0 : (best > 0.0 ? row[m] / best : kUnsolved);
      if (std::isfinite(r[m])) points.push_back(r[m]);
    }
    out.ratio.push_back(std::move(r));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  out.breakpoints = points;
  out.rho.assign(out.methods.size(), {});
  for (std::size_t m = 0; m < out.methods.size(); ++m) {
    for (double t : points) out.rho[m].push_back(out.evaluate(m, t));
  }
  return out;
}

CostTable read_costs_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("costs csv: empty input");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(trim(cell));
  }
  auto col = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw std::runtime_error("costs csv: missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t cm = col("method");
  const std::size_t cp = col("problem");
  const std::size_t ct = col("tau");
  CostTable table;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (cells.size() < header.size()) {
      throw std::runtime_error("costs csv: line " + std::to_string(lineno) + " has too few cells");
    }
    double tau;
    const std::string& t = cells[ct];
    if (t == "inf" || t == "Inf" || t == "unsolved" || t.empty()) {
      tau = kUnsolved;
    } else {
      try {
        std::size_t used = 0;
        tau = std::stod(t, &used);
        if (used != t.size()) throw std::invalid_argument(t);
      } catch (const std::exception&) {
        throw std::runtime_error("costs csv: line " + std::to_string(lineno) + ": bad tau '" + t + "'");
      }
    }
    table.set(cells[cm], cells[cp], tau);
  }
  return table;
}

void write_costs_csv(std::ostream& out, const CostTable& costs) {
  out << "method,problem,tau\n";
  for (std::size_t p = 0; p < costs.problems.size(); ++p) {
    for (std::size_t m = 0; m < costs.methods.size(); ++m) {
      out << costs.methods[m] << ',' << costs.problems[p] << ',' << format_double(costs.cost[p][m]) << '\n';
    }
  }
}

void write_profile_csv(std::ostream& out, const ProfileTable& profile) {
  out << "theta";
  for (const auto& m : profile.methods) out << ',' << m;
  out << '\n';
  for (std::size_t i = 0; i < profile.breakpoints.size(); ++i) {
    out << format_double(profile.breakpoints[i]);
    for (std::size_t m = 0; m < profile.methods.size(); ++m) out << ',' << format_double(profile.rho[m][i]);
    out << '\n';
  }
}

}  // namespace stoffar
