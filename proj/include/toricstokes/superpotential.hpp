#pragma once

// Mirror Laurent polynomial of a toric surface: critical points, critical
// values, stationary-phase leading terms and the distinguished ordering.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "toricstokes/homotopy.hpp"
#include "toricstokes/lattice_toric.hpp"
#include "toricstokes/polynomial.hpp"

namespace toricstokes {

using Exponent = std::pair<int, int>;

struct LaurentPolynomial {
  std::map<Exponent, cplx> terms;

  cplx operator()(cplx x, cplx y) const;
  lcplx operator()(lcplx x, lcplx y) const;
  /// (x dW/dx, y dW/dy)
  std::pair<cplx, cplx> log_gradient(cplx x, cplx y) const;
  /// Second partials W_xx, W_xy, W_yy.
  std::array<cplx, 3> hessian(cplx x, cplx y) const;
  std::vector<LatticeVector> exponents() const;
  /// Polynomial with x and y exchanged.
  LaurentPolynomial swapped() const;
  LaurentPolynomial scaled(cplx s) const;
  std::string to_string() const;
};

/// `coefficients` maps 1-based ray labels to c_k. When it is absent every ray
/// gets coefficient 1; when present, unlisted rays get 0.
LaurentPolynomial build_w(const Fan& fan, const std::optional<std::map<int, cplx>>& coefficients,
                          cplx constant = 0.0);

struct SolverConfig {
  double tol = 1e-12;              // residual bound after refinement
  double cluster_tol = 1e-6;       // deduplication of path endpoints
  double value_cluster_tol = 1e-8; // relative, for equal critical values
  double angle_tol = 1e-8;         // radians, admissibility
  double degenerate_tol = 1e-9;    // |hessian_det| below this is non-Morse
  HomotopyConfig homotopy;
};

struct CriticalPoint {
  int label = 0;
  cplx x, y;
  cplx value;
  cplx hessian_det;
  /// Principal square root of hessian_det; sqrt_sign records the branch used.
  cplx sqrt_hessian;
  int sqrt_sign = 1;
  cplx prefactor;  // 1 / (x y sqrt(hessian_det))
  double residual = 0.0;
};

/// All critical points of w in the torus, labelled in canonical order
/// (lexicographic on rounded coordinates).
std::vector<CriticalPoint> critical_points(const LaurentPolynomial& w, const SolverConfig& cfg = {});

/// (pi hbar)^{-1} prefactor exp(W(p)/hbar).
cplx saddle_leading_term(const CriticalPoint& cp, cplx hbar);

/// True iff no segment between distinct values is orthogonal to the line at
/// angle phi through the origin.
bool admissible_check(const std::vector<cplx>& values, double phi, double angle_tol = 1e-8,
                      double value_tol = 1e-8);

/// Smallest angular distance from orthogonality over pairs of distinct values.
double admissibility_margin(const std::vector<cplx>& values, double phi, double value_tol = 1e-8);

struct OrderedCriticalValues {
  std::vector<cplx> values;          // indexed by critical-point label
  std::vector<std::vector<int>> clusters;  // labels sharing a value, in distinguished order
  std::vector<int> ordering;         // labels in distinguished order
  cplx base_point;
  double phi = 0.0;
};

/// Orders the straight paths from base_point to the values by the "above"
/// rule, after rotating so the admissible line is vertical: paths are sorted
/// by departure angle, measured from the leftward direction, highest first.
/// Equal values keep label order.
OrderedCriticalValues distinguished_ordering(const std::vector<cplx>& values, cplx base_point,
                                             double phi, const SolverConfig& cfg = {});

/// Rotation e^{i(pi/2 - phi)} taking the admissible line to the imaginary axis.
cplx frame_rotation(double phi);

/// First angle in pi/2, pi/2 +- step, pi/2 +- 2 step, ... with margin at
/// least step/2.
double choose_admissible_phi(const std::vector<cplx>& values, double value_tol = 1e-8);

/// Picks a base point to the left of every value (in the rotated frame) that
/// keeps the straight paths far from the other critical values.
cplx choose_base_point(const std::vector<cplx>& values, double phi, double value_tol = 1e-8);

/// CSV: label,x_re,x_im,y_re,y_im,value_re,value_im,hessian_re,hessian_im,residual
std::string critical_points_csv(const std::vector<CriticalPoint>& points);

}  // namespace toricstokes
