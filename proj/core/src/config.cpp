#include "stoffar/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace stoffar {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::set<std::string> method_keys = {
      "sigma0",      "theta1",  "max_iters", "solver",  "schedule",    "kappa_d",         "sigma_g",
      "sigma_h",     "floor_g", "floor_h",   "fixed_g", "fixed_h",     "replacement",     "max_inner_iters",
      "krylov_tol"};
  static const std::map<std::string, std::set<std::string>> keys = {
      {"experiment",
       {"name", "dataset", "subset", "data_seed", "objective", "alpha", "epsilon", "runs", "base_seed", "methods",
        "threads", "trace_loss_every", "trace_exact_gradient"}},
      {"output", {"dir", "plots", "timing"}},
      {"offar2", method_keys},
      {"wngrad", method_keys},
  };
  return keys;
}

const std::set<std::string> kProblemKeys = {"dataset", "subset", "data_seed", "objective", "alpha"};

void apply_override(pt::ptree& tree, const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + text + "' is not section.key=value");
  const std::string path = boost::trim_copy(text.substr(0, eq));
  const std::string value = boost::trim_copy(text.substr(eq + 1));
  const auto dot = path.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == path.size()) {
    throw ConfigError("override '" + text + "' is not section.key=value");
  }
  const std::string section = path.substr(0, dot);
  const std::string key = path.substr(dot + 1);
  // Section names may contain dots (problem.<name>), so address by child.
  auto child = tree.get_child_optional(pt::ptree::path_type(section, '\x1f'));
  if (!child) {
    tree.push_back({section, pt::ptree()});
    child = tree.get_child_optional(pt::ptree::path_type(section, '\x1f'));
  }
  child->put(pt::ptree::path_type(key, '\x1f'), value);
}

pt::ptree read_tree(const std::string& text, const std::vector<std::string>& overrides) {
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  for (const auto& o : overrides) apply_override(tree, o);
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw ConfigError("key '" + section + "' outside any section");
    const std::set<std::string>* keys = nullptr;
    if (boost::starts_with(section, "problem.")) {
      keys = &kProblemKeys;
    } else if (const auto it = allowed_keys().find(section); it != allowed_keys().end()) {
      keys = &it->second;
    } else {
      throw ConfigError("unknown section [" + section + "]");
    }
    for (const auto& [key, value] : body) {
      if (!keys->contains(key)) throw ConfigError("unknown key '" + key + "' in [" + section + "]");
    }
  }
  return tree;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T>
T get(const pt::ptree& section, const std::string& key, T fallback, const std::string& where) {
  const auto v = section.get_optional<std::string>(pt::ptree::path_type(key, '\x1f'));
  if (!v) return fallback;
  const auto parsed = section.get_optional<T>(pt::ptree::path_type(key, '\x1f'));
  if (!parsed) throw ConfigError("[" + where + "] " + key + ": cannot parse '" + *v + "'");
  return *parsed;
}

const pt::ptree& section_or_empty(const pt::ptree& tree, const std::string& name) {
  static const pt::ptree empty;
  const auto child = tree.get_child_optional(pt::ptree::path_type(name, '\x1f'));
  return child ? *child : empty;
}

SolverMethod parse_solver(const std::string& s) {
  if (s == "matrix_free") return SolverMethod::matrix_free;
  if (s == "exact_secular") return SolverMethod::exact_secular;
  if (s == "closed_form_p1") return SolverMethod::closed_form_p1;
  throw ConfigError("unknown solver '" + s + "'");
}

void apply_method_section(MethodSpec& m, const pt::ptree& s, const std::string& where) {
  m.sigma0 = get(s, "sigma0", m.sigma0, where);
  m.theta1 = get(s, "theta1", m.theta1, where);
  m.max_iters = get(s, "max_iters", m.max_iters, where);
  if (m.degree == 2) m.solver.method = parse_solver(get<std::string>(s, "solver", "matrix_free", where));
  m.solver.max_inner_iters = get(s, "max_inner_iters", m.solver.max_inner_iters, where);
  m.solver.krylov_tol = get(s, "krylov_tol", m.solver.krylov_tol, where);
  try {
    m.schedule.kind = parse_schedule_kind(get<std::string>(s, "schedule", to_string(m.schedule.kind), where));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("[" + where + "] " + e.what());
  }
  m.schedule.kappa_d = get(s, "kappa_d", m.schedule.kappa_d, where);
  m.schedule.sigma_g = get(s, "sigma_g", m.schedule.sigma_g, where);
  m.schedule.sigma_h = get(s, "sigma_h", m.schedule.sigma_h, where);
  m.schedule.floor_g_frac = get(s, "floor_g", m.schedule.floor_g_frac, where);
  m.schedule.floor_h_frac = get(s, "floor_h", m.schedule.floor_h_frac, where);
  m.schedule.fixed_g = get(s, "fixed_g", m.schedule.fixed_g, where);
  m.schedule.fixed_h = get(s, "fixed_h", m.schedule.fixed_h, where);
  m.schedule.replacement = get(s, "replacement", m.schedule.replacement, where);
}

void read_problem(ProblemSpec& p, const pt::ptree& s, const std::string& where) {
  p.dataset = get(s, "dataset", p.dataset, where);
  p.subset = get(s, "subset", p.subset, where);
  p.data_seed = get(s, "data_seed", p.data_seed, where);
  try {
    p.objective = parse_loss_kind(get<std::string>(s, "objective", to_string(p.objective), where));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("[" + where + "] " + e.what());
  }
  p.alpha = get(s, "alpha", p.alpha, where);
}

void read_common(const pt::ptree& tree, ExperimentConfig& cfg, OutputOptions& out) {
  const auto& e = section_or_empty(tree, "experiment");
  cfg.problem.name = get<std::string>(e, "name", "", "experiment");
  read_problem(cfg.problem, e, "experiment");
  cfg.epsilon = get(e, "epsilon", cfg.epsilon, "experiment");
  cfg.runs = get(e, "runs", cfg.runs, "experiment");
  cfg.base_seed = get(e, "base_seed", cfg.base_seed, "experiment");
  cfg.threads = get(e, "threads", cfg.threads, "experiment");
  cfg.trace_loss_every = get(e, "trace_loss_every", cfg.trace_loss_every, "experiment");
  cfg.trace_exact_gradient = get(e, "trace_exact_gradient", cfg.trace_exact_gradient, "experiment");

  const std::string list = get<std::string>(e, "methods", "offar2-1,offar2-50,offar2-250,offar2-500,wngrad", "experiment");
  cfg.methods = parse_methods(list);
  for (auto& m : cfg.methods) {
    const std::string family = m.degree == 1 ? "wngrad" : "offar2";
    apply_method_section(m, section_or_empty(tree, family), family);
  }

  const auto& o = section_or_empty(tree, "output");
  out.dir = get<std::string>(o, "dir", out.dir.string(), "output");
  out.plots = get(o, "plots", out.plots, "output");
  out.timing = get(o, "timing", out.timing, "output");
  try {
    cfg.validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError(ex.what());
  }
}

}  // namespace

std::vector<MethodSpec> parse_methods(const std::string& list) {
  std::vector<std::string> parts;
  boost::split(parts, list, boost::is_any_of(", "), boost::token_compress_on);
  std::vector<MethodSpec> out;
  for (auto& raw : parts) {
    const std::string name = boost::trim_copy(raw);
    if (name.empty()) continue;
    if (name == "wngrad") {
      out.push_back(wngrad_method());
    } else if (boost::starts_with(name, "offar2-")) {
      const std::string digits = name.substr(7);
      Index m = 0;
      try {
        std::size_t used = 0;
        m = std::stol(digits, &used);
        if (used != digits.size()) m = 0;
      } catch (const std::exception&) {
        m = 0;
      }
      if (m < 1) throw ConfigError("method '" + name + "': memory must be a positive integer");
      out.push_back(offar2_method(m));
    } else {
      throw ConfigError("unknown method '" + name + "' (expected offar2-<m> or wngrad)");
    }
  }
  if (out.empty()) throw ConfigError("no methods given");
  return out;
}

RunConfig parse_run_config(const std::string& text, const std::vector<std::string>& overrides) {
  const pt::ptree tree = read_tree(text, overrides);
  for (const auto& [section, body] : tree) {
    if (boost::starts_with(section, "problem.")) throw ConfigError("[" + section + "] belongs in a suite file");
  }
  RunConfig rc;
  read_common(tree, rc.experiment, rc.output);
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  return parse_run_config(read_file(path), overrides);
}

SuiteConfig parse_suite_config(const std::string& text, const std::vector<std::string>& overrides) {
  const pt::ptree tree = read_tree(text, overrides);
  SuiteConfig sc;
  read_common(tree, sc.base, sc.output);
  for (const auto& [section, body] : tree) {
    if (!boost::starts_with(section, "problem.")) continue;
    ProblemSpec p = sc.base.problem;
    p.name = section.substr(8);
    read_problem(p, body, section);
    sc.problems.push_back(std::move(p));
  }
  if (sc.problems.empty()) throw ConfigError("suite has no [problem.<name>] sections");
  return sc;
}

SuiteConfig load_suite_config(const std::filesystem::path& path, const std::vector<std::string>& overrides) {
  return parse_suite_config(read_file(path), overrides);
}

}  // namespace stoffar
