#include "toricstokes/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "toricstokes/errors.hpp"

namespace toricstokes {

namespace pt = boost::property_tree;

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), p);
}

namespace {

const std::set<std::string> kKeys{
    "solver.tol",           "solver.cluster_tol",      "solver.value_cluster_tol", "solver.angle_tol",
    "solver.degenerate_tol", "solver.seed",            "solver.threads",           "solver.max_steps",
    "solver.min_step",      "solver.max_step",         "solver.infinity_tol",      "ordering.phi",
    "ordering.base_point",  "monodromy.critical_tol",  "monodromy.approach",       "monodromy.loop_vertices",
    "monodromy.epsilon",    "monodromy.max_vertices",  "monodromy.seed",           "stokes.max_braid_length",
    "ifunction.enabled",    "ifunction.max_degree",    "ifunction.max_norm",       "checks.picard_lefschetz",
    "checks.epsilon",       "checks.geometric_mutation"};

template <class T>
T get(const pt::ptree& tree, const std::string& key, T fallback) {
  auto node = tree.get_optional<std::string>(key);
  if (!node) return fallback;
  try {
    return tree.get<T>(key);
  } catch (const pt::ptree_error&) {
    throw Error(ErrorCode::ParseError, "bad value for " + key + ": '" + *node + "'");
  }
}

bool get_bool(const pt::ptree& tree, const std::string& key, bool fallback) {
  auto node = tree.get_optional<std::string>(key);
  if (!node) return fallback;
  if (*node == "true" || *node == "1" || *node == "yes") return true;
  if (*node == "false" || *node == "0" || *node == "no") return false;
  throw Error(ErrorCode::ParseError, "bad boolean for " + key + ": '" + *node + "'");
}

cplx parse_complex(const std::string& key, const std::string& s) {
  std::istringstream in(s);
  double re = 0, im = 0;
  if (!(in >> re)) throw Error(ErrorCode::ParseError, "bad complex for " + key + ": '" + s + "'");
  if (!(in >> im)) im = 0;
  std::string rest;
  if (in >> rest) throw Error(ErrorCode::ParseError, "bad complex for " + key + ": '" + s + "'");
  return {re, im};
}

}  // namespace

PipelineConfig parse_config(const std::string& ini_text) {
  pt::ptree tree;
  std::istringstream in(ini_text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) throw Error(ErrorCode::ParseError, "key outside a section: " + section);
    for (const auto& [key, value] : body)
      if (!kKeys.contains(section + "." + key))
        throw Error(ErrorCode::ParseError, "unknown config key " + section + "." + key);
  }

  PipelineConfig c;
  auto& s = c.solver;
  s.tol = get(tree, "solver.tol", s.tol);
  s.cluster_tol = get(tree, "solver.cluster_tol", s.cluster_tol);
  s.value_cluster_tol = get(tree, "solver.value_cluster_tol", s.value_cluster_tol);
  s.angle_tol = get(tree, "solver.angle_tol", s.angle_tol);
  s.degenerate_tol = get(tree, "solver.degenerate_tol", s.degenerate_tol);
  auto& h = s.homotopy;
  h.seed = get(tree, "solver.seed", h.seed);
  h.threads = get(tree, "solver.threads", h.threads);
  h.max_steps = get(tree, "solver.max_steps", h.max_steps);
  h.min_step = get(tree, "solver.min_step", h.min_step);
  h.max_step = get(tree, "solver.max_step", h.max_step);
  h.infinity_tol = get(tree, "solver.infinity_tol", h.infinity_tol);

  if (auto phi = tree.get_optional<std::string>("ordering.phi")) c.phi = get(tree, "ordering.phi", 0.0);
  if (auto b = tree.get_optional<std::string>("ordering.base_point"))
    c.base_point = parse_complex("ordering.base_point", *b);

  auto& m = c.monodromy;
  m.critical_tol = get(tree, "monodromy.critical_tol", m.critical_tol);
  m.approach = get(tree, "monodromy.approach", m.approach);
  m.loop_vertices = get(tree, "monodromy.loop_vertices", m.loop_vertices);
  m.epsilon = get(tree, "monodromy.epsilon", m.epsilon);
  m.max_vertices = get(tree, "monodromy.max_vertices", m.max_vertices);
  m.seed = get(tree, "monodromy.seed", m.seed);

  c.max_braid_length = get(tree, "stokes.max_braid_length", c.max_braid_length);
  c.ifunction = get_bool(tree, "ifunction.enabled", c.ifunction);
  c.max_degree = get(tree, "ifunction.max_degree", c.max_degree);
  c.max_norm = get(tree, "ifunction.max_norm", c.max_norm);
  c.picard_lefschetz = get_bool(tree, "checks.picard_lefschetz", c.picard_lefschetz);
  c.epsilon_check = get_bool(tree, "checks.epsilon", c.epsilon_check);
  c.geometric_mutation = get_bool(tree, "checks.geometric_mutation", c.geometric_mutation);
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_config(const PipelineConfig& c) {
  std::ostringstream os;
  auto b = [](bool v) { return v ? "true" : "false"; };
  const auto& s = c.solver;
  const auto& h = s.homotopy;
  os << "[solver]\n"
     << "tol = " << format_double(s.tol) << "\n"
     << "cluster_tol = " << format_double(s.cluster_tol) << "\n"
     << "value_cluster_tol = " << format_double(s.value_cluster_tol) << "\n"
     << "angle_tol = " << format_double(s.angle_tol) << "\n"
     << "degenerate_tol = " << format_double(s.degenerate_tol) << "\n"
     << "seed = " << h.seed << "\n"
     << "threads = " << h.threads << "\n"
     << "max_steps = " << h.max_steps << "\n"
     << "min_step = " << format_double(h.min_step) << "\n"
     << "max_step = " << format_double(h.max_step) << "\n"
     << "infinity_tol = " << format_double(h.infinity_tol) << "\n";
  os << "\n[ordering]\n";
  if (c.phi) os << "phi = " << format_double(*c.phi) << "\n";
  if (c.base_point)
    os << "base_point = " << format_double(c.base_point->real()) << " " << format_double(c.base_point->imag())
       << "\n";
  const auto& m = c.monodromy;
  os << "\n[monodromy]\n"
     << "critical_tol = " << format_double(m.critical_tol) << "\n"
     << "approach = " << format_double(m.approach) << "\n"
     << "loop_vertices = " << m.loop_vertices << "\n"
     << "epsilon = " << format_double(m.epsilon) << "\n"
     << "max_vertices = " << m.max_vertices << "\n"
     << "seed = " << m.seed << "\n";
  os << "\n[stokes]\nmax_braid_length = " << c.max_braid_length << "\n";
  os << "\n[ifunction]\nenabled = " << b(c.ifunction) << "\nmax_degree = " << c.max_degree
     << "\nmax_norm = " << c.max_norm << "\n";
  os << "\n[checks]\npicard_lefschetz = " << b(c.picard_lefschetz) << "\nepsilon = " << b(c.epsilon_check)
     << "\ngeometric_mutation = " << b(c.geometric_mutation) << "\n";
  return os.str();
}

}  // namespace toricstokes
