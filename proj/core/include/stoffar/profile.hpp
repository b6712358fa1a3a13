#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace stoffar {

inline constexpr double kUnsolved = std::numeric_limits<double>::infinity();

/// cost[problem][method]; kUnsolved marks a failure.
struct CostTable {
  std::vector<std::string> methods;
  std::vector<std::string> problems;
  std::vector<std::vector<double>> cost;

  void set(const std::string& method, const std::string& problem, double value);
};

/// Dolan-More performance profile. ratio[problem][method] = cost / best cost
/// on that problem (infinity when unsolved or when nobody solved it);
/// rho_m(theta) = fraction of problems with ratio <= theta.
struct ProfileTable {
  std::vector<std::string> methods;
  std::vector<std::string> problems;
  std::vector<std::vector<double>> ratio;
  /// Sorted distinct finite ratios (always starting at 1).
  std::vector<double> breakpoints;
  /// rho[method][i] = rho_m(breakpoints[i]).
  std::vector<std::vector<double>> rho;

  /// rho_m(theta), a right-continuous step function.
  double evaluate(std::size_t method, double theta) const;
  /// Fraction of problems the method solved (rho at infinity).
  double solved_fraction(std::size_t method) const;
};

ProfileTable performance_profile(const CostTable& costs);

/// CSV with columns method,problem,tau (header required; "inf" marks unsolved).
CostTable read_costs_csv(std::istream& in);
void write_costs_csv(std::ostream& out, const CostTable& costs);

/// Columns theta,<method>... one row per breakpoint.
void write_profile_csv(std::ostream& out, const ProfileTable& profile);

}  // namespace stoffar
