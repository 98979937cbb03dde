#pragma once

// Total-degree homotopy continuation for square polynomial systems, tracked
// on a random affine patch of projective space so that every path stays
// bounded.

#include <cstdint>
#include <vector>

#include "toricstokes/polynomial.hpp"

namespace toricstokes {

struct HomotopyConfig {
  std::uint64_t seed = 20240611;
  double min_step = 1e-13;
  double max_step = 0.05;
  int max_steps = 200000;
  /// Endpoints with |z0| / |z| below this are treated as solutions at infinity.
  double infinity_tol = 1e-7;
  int threads = 0;  // 0: hardware concurrency
};

struct PathResult {
  std::vector<cplx> affine;  // valid when finite
  bool finite = false;
  bool converged = false;
  int steps = 0;
};

/// Tracks all Bezout-many paths from z_i^{d_i} = 1 to the target system.
/// Results are in start-solution order and independent of thread count.
std::vector<PathResult> solve_total_degree(const std::vector<SparsePoly>& system,
                                           const HomotopyConfig& cfg);

}  // namespace toricstokes
