#pragma once

// Pipeline configuration and its INI form:
//   [solver]
//   tol = 1e-12
//   [ordering]
//   phi = 1.5707963267948966
//   base_point = 0 0

#include <filesystem>
#include <optional>
#include <string>

#include "toricstokes/monodromy.hpp"
#include "toricstokes/superpotential.hpp"

namespace toricstokes {

struct PipelineConfig {
  SolverConfig solver;
  MonodromyConfig monodromy;
  /// Admissible line angle; chosen automatically when absent.
  std::optional<double> phi;
  /// Requested base point; Y-bl6 defaults to 0, other surfaces are automatic.
  std::optional<cplx> base_point;
  int max_braid_length = 2;
  int max_degree = 6;
  int max_norm = 4;
  bool ifunction = true;
  bool picard_lefschetz = false;
  bool epsilon_check = true;
  bool geometric_mutation = true;
};

/// Missing keys keep their defaults. Throws ParseError on unknown sections or
/// keys and on malformed values.
PipelineConfig parse_config(const std::string& ini_text);
PipelineConfig load_config(const std::filesystem::path& path);
/// Every key, with doubles in shortest round-trip form.
std::string format_config(const PipelineConfig& cfg);

std::string format_double(double v);

}  // namespace toricstokes
